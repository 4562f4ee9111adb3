//! Hurwitz numbers.
//!
//! `H^g_α` counts genus `g`, degree `d = |α|` covers of the line with profile
//! `α` over infinity (preimages labelled) and `r = 2g + d + n - 2` further
//! simple branch points. Equivalently it is the number of `r`-tuples of
//! transpositions in `S_d` whose product has cycle type `α` and which
//! generate a transitive subgroup, times `#Aut α / d!`.

pub mod brute;
pub mod classdp;
pub mod joincut;
pub mod perm;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, TautError};
use crate::exact::{aut_partition, big, factorial, int, rat_pow, BigRational, Partition};

pub use brute::TupleSearch;
pub use joincut::{faber_hurwitz_coeff, FaberHurwitzCoeff, JoinCut};
pub use perm::PermWord;

/// Bounds on brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCaps {
    pub max_degree: u32,
    pub max_branch: u32,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_degree: 6,
            max_branch: 10,
        }
    }
}

impl EnumerationCaps {
    /// Bounds for the cut-and-join transfer counter, which scales much further.
    pub fn transfer_default() -> Self {
        EnumerationCaps {
            max_degree: 12,
            max_branch: 26,
        }
    }

    fn check(&self, d: u32, r: i64) -> Result<()> {
        if d > self.max_degree {
            return Err(TautError::ResourceCap {
                what: "degree d",
                value: d as i64,
                cap: self.max_degree as i64,
            });
        }
        if r > self.max_branch as i64 {
            return Err(TautError::ResourceCap {
                what: "branch points r",
                value: r,
                cap: self.max_branch as i64,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzQuery {
    pub g: u32,
    pub alpha: Partition,
    pub connected: bool,
}

impl HurwitzQuery {
    pub fn connected(g: u32, alpha: Partition) -> Self {
        HurwitzQuery {
            g,
            alpha,
            connected: true,
        }
    }

    /// `r = 2g + d + n - 2`.
    pub fn branch_points(&self) -> i64 {
        2 * self.g as i64 + self.alpha.size() as i64 + self.alpha.len() as i64 - 2
    }

    fn validate(&self) -> Result<()> {
        if self.alpha.is_empty() {
            return domain("Hurwitz number of an empty profile");
        }
        Ok(())
    }

    fn normalize(&self, raw: BigInt) -> BigRational {
        BigRational::new(
            raw * aut_partition(&self.alpha),
            factorial(self.alpha.size() as u64),
        )
    }
}

/// `H^g_α` by enumerating transposition tuples, in parallel over the first
/// transposition.
pub fn hurwitz_bruteforce(q: &HurwitzQuery, caps: &EnumerationCaps) -> Result<BigRational> {
    q.validate()?;
    let r = q.branch_points();
    let d = q.alpha.size();
    caps.check(d, r)?;
    if r < 0 {
        return Ok(BigRational::zero());
    }
    let start: Vec<usize> = (0..d as usize).collect();
    let count = TupleSearch::new(&start, r as usize, &q.alpha, q.connected).count();
    Ok(q.normalize(BigInt::from(count)))
}

/// `H^g_α` from the cut-and-join transfer counter; same quantity as
/// [`hurwitz_bruteforce`], reachable at much larger `d` and `r`.
pub fn hurwitz_transfer(q: &HurwitzQuery, caps: &EnumerationCaps) -> Result<BigRational> {
    q.validate()?;
    let r = q.branch_points();
    let d = q.alpha.size();
    caps.check(d, r)?;
    if r < 0 {
        return Ok(BigRational::zero());
    }
    let count = classdp::count_tuples(&Partition::ones(d), r as usize, &q.alpha, q.connected);
    Ok(q.normalize(BigInt::from(count)))
}

/// `H⁰_α = r! d^{n-3} ∏ α_i^{α_i} / α_i!`.
pub fn hurwitz_genus0(alpha: &Partition) -> BigRational {
    let d = alpha.size() as i64;
    let n = alpha.len() as i64;
    let r = d + n - 2;
    let mut v = big(factorial(r as u64)) * rat_pow(&int(d), n - 3);
    for &a in alpha.parts() {
        v *= BigRational::new(BigInt::from(a).pow(a), factorial(a as u64));
    }
    v
}

/// Double Hurwitz number with profile `α` over zero and `β` over infinity,
/// both sets of preimages labelled, and `r = 2g - 2 + l(α) + l(β)` simple
/// branch points.
///
/// The tuple count does not depend on which `ρ ∈ C(α)` is fixed, so one
/// representative is enumerated and the count scaled by `|C(α)|`.
pub fn double_hurwitz_bruteforce(
    g: u32,
    alpha: &Partition,
    beta: &Partition,
    connected: bool,
    caps: &EnumerationCaps,
) -> Result<BigRational> {
    if alpha.is_empty() || beta.is_empty() {
        return domain("double Hurwitz number with an empty profile");
    }
    if alpha.size() != beta.size() {
        return domain(format!("profiles {alpha} and {beta} have different sizes"));
    }
    let d = alpha.size();
    let r = 2 * g as i64 - 2 + alpha.len() as i64 + beta.len() as i64;
    caps.check(d, r)?;
    if r < 0 {
        return Ok(BigRational::zero());
    }
    let rho = PermWord::of_cycle_type(alpha);
    let count = TupleSearch::new(rho.entries(), r as usize, beta, connected).count();
    let class_size = factorial(d as u64) / centralizer_order(alpha);
    let raw = BigInt::from(count) * class_size * aut_partition(alpha) * aut_partition(beta);
    Ok(BigRational::new(raw, factorial(d as u64)))
}

/// `z_α = ∏ i^{m_i} m_i!`, the order of the centralizer of a permutation of
/// cycle type `α`.
pub fn centralizer_order(alpha: &Partition) -> BigInt {
    let mut z = aut_partition(alpha);
    for &a in alpha.parts() {
        z *= a;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn brute(g: u32, a: &str) -> BigRational {
        hurwitz_bruteforce(
            &HurwitzQuery::connected(g, p(a)),
            &EnumerationCaps::default(),
        )
        .unwrap()
    }

    #[test]
    fn hyperelliptic_half() {
        for g in 0..=3 {
            assert_eq!(brute(g, "2"), rat(1, 2), "g={g}");
        }
    }

    #[test]
    fn trivial_and_small_cases() {
        assert_eq!(brute(0, "1"), int(1));
        assert_eq!(brute(1, "2"), rat(1, 2));
        assert_eq!(brute(0, "1,1"), int(1));
        assert_eq!(brute(1, "1"), int(0));
    }

    #[test]
    fn genus0_formula_values() {
        assert_eq!(hurwitz_genus0(&p("2")), rat(1, 2));
        assert_eq!(hurwitz_genus0(&p("1,1,1")), int(24));
        assert_eq!(hurwitz_genus0(&p("3")), int(1));
        assert_eq!(brute(0, "1,1,1"), int(24));
        assert_eq!(brute(0, "3"), int(1));
    }

    #[test]
    fn caps_are_enforced() {
        let q = HurwitzQuery::connected(0, p("7"));
        let err = hurwitz_bruteforce(&q, &EnumerationCaps::default()).unwrap_err();
        assert!(matches!(
            err,
            TautError::ResourceCap {
                what: "degree d",
                ..
            }
        ));
        let q = HurwitzQuery::connected(5, p("2"));
        let err = hurwitz_bruteforce(&q, &EnumerationCaps::default()).unwrap_err();
        assert!(matches!(
            err,
            TautError::ResourceCap {
                what: "branch points r",
                ..
            }
        ));
    }

    #[test]
    fn double_examples() {
        let caps = EnumerationCaps::default();
        assert_eq!(
            double_hurwitz_bruteforce(0, &p("1"), &p("1"), true, &caps).unwrap(),
            int(1)
        );
        assert_eq!(
            double_hurwitz_bruteforce(0, &p("2"), &p("2"), true, &caps).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            double_hurwitz_bruteforce(0, &p("2"), &p("1,1"), true, &caps).unwrap(),
            int(1)
        );
        assert!(double_hurwitz_bruteforce(0, &p("2"), &p("1"), true, &caps).is_err());
    }

    #[test]
    fn double_with_trivial_side() {
        let caps = EnumerationCaps::default();
        for d in 1..=4 {
            for alpha in Partition::all_of(d) {
                for g in 0..=1 {
                    let q = HurwitzQuery::connected(g, alpha.clone());
                    if q.branch_points() > 8 {
                        continue;
                    }
                    let single = hurwitz_bruteforce(&q, &caps).unwrap();
                    let double =
                        double_hurwitz_bruteforce(g, &alpha, &Partition::ones(d), true, &caps)
                            .unwrap();
                    assert_eq!(double, single * big(factorial(d as u64)), "g={g} {alpha}");
                }
            }
        }
    }
}
