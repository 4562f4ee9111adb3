use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use tautkit::exact::{int, rat, BigRational};
use tautkit::graphs::{enumerate_stable, DualGraph};
use tautkit::invariance::{cross_ratio_relation_m05, rl_apply, GraphSum};

/// Stable graphs over a few small `(g, n)` with random ψ-powers on legs.
fn samples(rng: &mut StdRng) -> Vec<DualGraph> {
    let mut out = Vec::new();
    for (g, n) in [(0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)] {
        let classes = enumerate_stable(g, n, true).unwrap();
        for c in classes.choose_multiple(rng, 4) {
            let mut x = c.canonical.clone();
            for leg in x.legs.iter_mut() {
                if rng.gen_bool(0.3) {
                    leg.psi = rng.gen_range(1..3);
                }
            }
            if x.class_dimension() >= 0 {
                out.push(x);
            }
        }
    }
    out
}

fn single(x: &DualGraph) -> GraphSum {
    let mut s = GraphSum::new(x.genus(), x.n() as u32);
    s.add_graph(x, int(1)).unwrap();
    s
}

#[test]
fn parity_in_new_legs() {
    let mut rng = StdRng::seed_from_u64(3);
    for x in samples(&mut rng) {
        let n = x.n() as u32;
        for l in 1..=3u32 {
            let out = rl_apply(&single(&x), l).unwrap();
            let swapped = out.swap_legs(n + 1, n + 2);
            let expected = if l % 2 == 1 {
                out.clone()
            } else {
                &int(-1) * &out
            };
            assert_eq!(swapped, expected, "l={l}, {x:?}");
        }
    }
}

#[test]
fn degree_and_stability() {
    let mut rng = StdRng::seed_from_u64(5);
    for x in samples(&mut rng) {
        for l in 1..=3u32 {
            let out = rl_apply(&single(&x), l).unwrap();
            assert_eq!((out.genus(), out.n()), (x.genus() - 1, x.n() as u32 + 2));
            for y in out.terms().keys() {
                assert!(y.is_stable());
                assert_eq!(y.class_dimension(), x.class_dimension() - l as i64);
            }
            if !out.points().is_empty() {
                assert_eq!(x.class_dimension(), l as i64);
            }
        }
    }
}

#[test]
fn linearity() {
    let mut rng = StdRng::seed_from_u64(9);
    let all: Vec<DualGraph> = samples(&mut rng);
    for _ in 0..20 {
        let x = all.choose(&mut rng).unwrap();
        let same: Vec<&DualGraph> = all
            .iter()
            .filter(|y| y.genus() == x.genus() && y.n() == x.n())
            .collect();
        let y = same.choose(&mut rng).unwrap();
        let a: BigRational = rat(rng.gen_range(-5..6), rng.gen_range(1..4));
        let b: BigRational = rat(rng.gen_range(-5..6), rng.gen_range(1..4));
        let (s, t) = (single(x), single(y));
        let combo = (&a * &s).add_scaled(&t, &b).unwrap();
        for l in 1..=2 {
            let lhs = rl_apply(&combo, l).unwrap();
            let rhs = (&a * &rl_apply(&s, l).unwrap())
                .add_scaled(&rl_apply(&t, l).unwrap(), &b)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn relation_and_its_images_are_annihilated() {
    let base = cross_ratio_relation_m05();
    assert!(rl_apply(&base, 1).unwrap().is_zero());
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..10 {
        let mut labels: Vec<u32> = (1..=5).collect();
        labels.shuffle(&mut rng);
        let r = base
            .swap_legs(labels[0], labels[1])
            .swap_legs(labels[2], labels[3]);
        assert!(rl_apply(&r, 1).unwrap().is_zero());
    }
}
