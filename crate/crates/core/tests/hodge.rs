use tautkit::exact::{rat, Partition};
use tautkit::hodge::{elsv_forward, hodge_from_hurwitz, HurwitzRoute};
use tautkit::hurwitz::{hurwitz_bruteforce, hurwitz_transfer, EnumerationCaps, HurwitzQuery};
use tautkit::psi::correlator;

#[test]
fn routes_agree() {
    for (g, n) in [(1, 1), (1, 2), (0, 4)] {
        let a = hodge_from_hurwitz(g, n, HurwitzRoute::BruteForce, &EnumerationCaps::default())
            .unwrap();
        let b = hodge_from_hurwitz(
            g,
            n,
            HurwitzRoute::Transfer,
            &EnumerationCaps::transfer_default(),
        )
        .unwrap();
        assert_eq!(a, b, "({g},{n})");
    }
}

#[test]
fn top_coefficients_are_psi_integrals() {
    for (g, n) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (0, 5)] {
        let h = hodge_from_hurwitz(
            g,
            n,
            HurwitzRoute::Transfer,
            &EnumerationCaps::transfer_default(),
        )
        .unwrap();
        for x in h.iter().filter(|x| x.k == 0) {
            assert_eq!(x.value, correlator(g, &x.a).unwrap(), "g={g} a={:?}", x.a);
        }
    }
}

#[test]
fn lambda_g_values() {
    // ∫_{M̄_{g,1}} ψ^{2g-2} λ_g = (2^{2g-1} - 1) |B_{2g}| / (2^{2g-1} (2g)!)
    let h = hodge_from_hurwitz(
        1,
        1,
        HurwitzRoute::Transfer,
        &EnumerationCaps::transfer_default(),
    )
    .unwrap();
    assert_eq!(h.iter().find(|x| x.k == 1).unwrap().value, rat(1, 24));
    let h = hodge_from_hurwitz(
        2,
        1,
        HurwitzRoute::Transfer,
        &EnumerationCaps::transfer_default(),
    )
    .unwrap();
    assert_eq!(h.iter().find(|x| x.k == 2).unwrap().value, rat(7, 5760));
    // λ_1 on M̄_{2,1}: ∫ψ^3 λ_1 = 1/480
    assert_eq!(h.iter().find(|x| x.k == 1).unwrap().value, rat(1, 480));
}

#[test]
fn forward_formula_reproduces_counts_off_the_grid() {
    let brute = EnumerationCaps::default();
    let big = EnumerationCaps::transfer_default();
    for (g, n, profiles) in [
        (1u32, 1usize, vec!["5", "6"]),
        (1, 2, vec!["3,2", "4,1", "3,3"]),
        (2, 1, vec!["6", "7"]),
        (0, 3, vec!["2,2,2", "4,1,1"]),
    ] {
        let h = hodge_from_hurwitz(g, n, HurwitzRoute::Transfer, &big).unwrap();
        for p in profiles {
            let alpha: Partition = p.parse().unwrap();
            let q = HurwitzQuery::connected(g, alpha.clone());
            let expected = if q.branch_points() <= 6 && alpha.size() <= brute.max_degree {
                hurwitz_bruteforce(&q, &brute).unwrap()
            } else {
                hurwitz_transfer(&q, &big).unwrap()
            };
            assert_eq!(
                elsv_forward(g, &alpha, &h).unwrap(),
                expected,
                "g={g} alpha={alpha}"
            );
        }
    }
}
