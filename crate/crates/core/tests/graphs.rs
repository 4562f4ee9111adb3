use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use tautkit::graphs::{
    enumerate_stable, enumerate_stable_with, is_isomorphic, DualGraph, EnumerateOptions,
};

fn shuffled(g: &DualGraph, rng: &mut StdRng) -> DualGraph {
    let nv = g.vertices.len();
    let mut perm: Vec<usize> = (0..nv).collect();
    perm.shuffle(rng);
    let mut out = DualGraph {
        vertices: vec![g.vertices[0].clone(); nv],
        edges: g.edges.clone(),
        legs: g.legs.clone(),
    };
    for v in 0..nv {
        out.vertices[perm[v]] = g.vertices[v].clone();
    }
    for e in out.edges.iter_mut() {
        e.a.vertex = perm[e.a.vertex];
        e.b.vertex = perm[e.b.vertex];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut e.a, &mut e.b);
        }
    }
    for l in out.legs.iter_mut() {
        l.vertex = perm[l.vertex];
    }
    out.edges.shuffle(rng);
    out.legs.shuffle(rng);
    out
}

#[test]
fn canonical_form_survives_relabelling() {
    let mut rng = StdRng::seed_from_u64(7);
    for (g, n) in [(0, 5), (1, 3), (2, 2), (3, 0)] {
        for class in enumerate_stable(g, n, true).unwrap() {
            let c = &class.canonical;
            assert_eq!(&c.canonical(), c);
            for _ in 0..5 {
                let s = shuffled(c, &mut rng);
                assert!(is_isomorphic(&s, c));
                assert_eq!(s.automorphisms(), class.automorphisms);
            }
        }
    }
}

#[test]
fn distinct_classes_are_not_isomorphic() {
    let all = enumerate_stable(1, 3, true).unwrap();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            assert!(!is_isomorphic(&all[i].canonical, &all[j].canonical));
        }
    }
}

#[test]
fn every_class_has_requested_genus_and_is_stable() {
    for (g, n, conn) in [
        (0, 6, true),
        (1, 4, true),
        (2, 3, true),
        (0, 6, false),
        (1, 3, false),
    ] {
        for c in enumerate_stable(g, n, conn).unwrap() {
            assert_eq!(c.genus(), g);
            assert!(c.canonical.is_stable());
            assert_eq!(c.canonical.leg_labels(), (1..=n).collect::<Vec<_>>());
            assert_eq!(c.codim(), c.canonical.edges.len());
            if conn {
                assert!(c.canonical.is_connected());
            }
        }
    }
}

#[test]
fn genus_zero_six_points_strata() {
    let all = enumerate_stable(0, 6, true).unwrap();
    let by_codim: Vec<usize> = (0..=3)
        .map(|k| all.iter().filter(|c| c.codim() == k).count())
        .collect();
    assert_eq!(by_codim, vec![1, 25, 105, 105]);
}

#[test]
fn tree_bound() {
    for g in 2..=6i64 {
        let opts = EnumerateOptions {
            trees_only: true,
            max_dim: 15,
            ..Default::default()
        };
        let trees = enumerate_stable_with(g, 0, &opts).unwrap();
        assert!(!trees.is_empty());
        let mut extremal = 0;
        for t in &trees {
            let x = &t.canonical;
            assert_eq!(x.edges.len() + 1, x.vertices.len());
            let zeros = x.vertices.iter().filter(|v| v.genus == 0).count() as i64;
            assert!(zeros <= g - 2, "g={g}: {x:?}");
            if zeros == g - 2 && g >= 3 {
                extremal += 1;
                for v in 0..x.vertices.len() {
                    let (gv, val) = (x.vertices[v].genus, x.valence(v));
                    assert!((gv, val) == (1, 1) || (gv, val) == (0, 3), "g={g}: {x:?}");
                }
            }
        }
        if g == 6 {
            assert_eq!(extremal, 2);
        }
    }
}

#[test]
fn random_graph_genus_matches_components() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let nv = rng.gen_range(1..5);
        let genera: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..3)).collect();
        let mut g = DualGraph::with_vertices(&genera);
        for _ in 0..rng.gen_range(0..5) {
            g = g.edge(rng.gen_range(0..nv), rng.gen_range(0..nv));
        }
        let comps = g.components();
        let per: i64 = comps
            .iter()
            .map(|c| {
                let gv: i64 = c.iter().map(|&v| g.vertices[v].genus as i64).sum();
                let e = g.edges.iter().filter(|e| c.contains(&e.a.vertex)).count() as i64;
                gv + e - c.len() as i64 + 1 - 1
            })
            .sum();
        assert_eq!(g.genus(), per + 1);
    }
}
