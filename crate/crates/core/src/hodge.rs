//! Hodge integrals `∫ ψ^a λ_k` extracted from Hurwitz numbers through the
//! ELSV formula, and the formula evaluated forwards.
//!
//! ELSV states that
//!
//! ```text
//! P_{g,n}(α) = H^g_α / (r! ∏ α_i^{α_i} / α_i!) = Σ_{|a| + k = 3g-3+n} (-1)^k ∫ ψ^a λ_k ∏ α_i^{a_i}
//! ```
//!
//! is a polynomial in `α` with degrees in `[2g-3+n, 3g-3+n]`. Sampling it at
//! enough profiles and interpolating yields every coefficient, and the top
//! degree part consists of pure ψ-intersections.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, TautError};
use crate::exact::{big, factorial, BigRational, Partition};
use crate::hurwitz::{hurwitz_bruteforce, hurwitz_transfer, EnumerationCaps, HurwitzQuery};
use crate::interp::{
    interpolate_poly, monomials_in_window, simplex_grid, PolyCoeffs, SymmetricPolySample,
};
use crate::psi::CorrelatorKey;

/// `value = ∫_{M̄_{g,n}} ψ_1^{a_1} ⋯ ψ_n^{a_n} λ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeIntegral {
    pub g: u32,
    pub a: Vec<u32>,
    pub k: u32,
    #[serde(with = "crate::exact::ratstr")]
    pub value: BigRational,
}

impl HodgeIntegral {
    /// The ψ-only correlator this integral equals when `k = 0`.
    pub fn correlator_key(&self) -> Option<CorrelatorKey> {
        (self.k == 0).then(|| CorrelatorKey::sorted(self.g, self.a.clone()))
    }
}

/// Which Hurwitz counter feeds the interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurwitzRoute {
    BruteForce,
    Transfer,
}

/// Degree window `[max(0, 2g-3+n), 3g-3+n]` of `P_{g,n}`.
pub fn elsv_window(g: u32, n: usize) -> (u32, u32) {
    let hi = 3 * g as i64 - 3 + n as i64;
    let lo = (2 * g as i64 - 3 + n as i64).max(0);
    (lo as u32, hi as u32)
}

/// `r! ∏ α_i^{α_i} / α_i!`.
pub fn elsv_prefactor(g: u32, alpha: &Partition) -> BigRational {
    let r = 2 * g as u64 + alpha.size() as u64 + alpha.len() as u64 - 2;
    let mut v = big(factorial(r));
    for &a in alpha.parts() {
        v *= BigRational::new(BigInt::from(a).pow(a), factorial(a as u64));
    }
    v
}

/// All Hodge integrals on `M̄_{g,n}` that appear in the ELSV formula.
///
/// Samples `P_{g,n}` on the shifted simplex `{α ≥ 1 : Σ(α_i - 1) ≤ 3g-3+n}`,
/// which determines every polynomial of that degree, and interpolates over the
/// ELSV degree window. One entry is returned per monomial of the window,
/// zero values included; the symmetry of the result in `α` is checked.
pub fn hodge_from_hurwitz(
    g: u32,
    n: usize,
    route: HurwitzRoute,
    caps: &EnumerationCaps,
) -> Result<Vec<HodgeIntegral>> {
    if n == 0 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return domain(format!(
            "ELSV needs a stable (g,n) with n >= 1, got ({g},{n})"
        ));
    }
    let (degmin, degmax) = elsv_window(g, n);
    let mut cache: HashMap<Partition, BigRational> = HashMap::new();
    let mut samples = Vec::new();
    for point in simplex_grid(n, degmax) {
        let alpha = Partition::new(point.clone())?;
        let p = match cache.get(&alpha) {
            Some(v) => v.clone(),
            None => {
                let q = HurwitzQuery::connected(g, alpha.clone());
                let h = match route {
                    HurwitzRoute::BruteForce => hurwitz_bruteforce(&q, caps)?,
                    HurwitzRoute::Transfer => hurwitz_transfer(&q, caps)?,
                };
                let v = h / elsv_prefactor(g, &alpha);
                cache.insert(alpha, v.clone());
                v
            }
        };
        samples.push(SymmetricPolySample { point, value: p });
    }
    let coeffs = interpolate_poly(&samples, n, degmin, degmax)?;
    check_symmetric(&coeffs)?;

    let dim = 3 * g + n as u32 - 3;
    Ok(monomials_in_window(n, degmin, degmax)
        .into_iter()
        .map(|a| {
            let k = dim - a.iter().sum::<u32>();
            let c = coeffs.get(&a).cloned().unwrap_or_else(BigRational::zero);
            let value = if k % 2 == 1 { -c } else { c };
            HodgeIntegral { g, a, k, value }
        })
        .collect())
}

fn check_symmetric(coeffs: &PolyCoeffs) -> Result<()> {
    for (e, c) in coeffs {
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let mut f = e.clone();
                f.swap(i, j);
                if coeffs.get(&f) != Some(c) {
                    return Err(TautError::Inconsistent(format!(
                        "interpolated polynomial is not symmetric at exponent {e:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `H^g_α` from the ELSV formula and a list of Hodge integrals for
/// `(g, l(α))`.
///
/// The unstable genus-0 cases use `P_{0,1}(α) = 1/α²` and
/// `P_{0,2}(α) = 1/(α_1 + α_2)` and ignore `hodge`.
pub fn elsv_forward(g: u32, alpha: &Partition, hodge: &[HodgeIntegral]) -> Result<BigRational> {
    if alpha.is_empty() {
        return domain("ELSV of an empty profile");
    }
    let n = alpha.len();
    let pre = elsv_prefactor(g, alpha);
    if g == 0 && n <= 2 {
        let d = alpha.size() as i64;
        let p = if n == 1 {
            BigRational::new(1.into(), (d * d).into())
        } else {
            BigRational::new(1.into(), d.into())
        };
        return Ok(pre * p);
    }
    let (degmin, degmax) = elsv_window(g, n);
    let dim = 3 * g + n as u32 - 3;
    let by_key: HashMap<(&[u32], u32), &BigRational> = hodge
        .iter()
        .filter(|h| h.g == g)
        .map(|h| ((h.a.as_slice(), h.k), &h.value))
        .collect();
    let mut total = BigRational::zero();
    for a in monomials_in_window(n, degmin, degmax) {
        let k = dim - a.iter().sum::<u32>();
        let Some(&v) = by_key.get(&(a.as_slice(), k)) else {
            return Err(TautError::MissingHodge { exps: a, k });
        };
        let mono: BigInt = a
            .iter()
            .zip(alpha.parts())
            .map(|(&e, &x)| BigInt::from(x).pow(e))
            .product();
        let term = v * big(mono);
        total += if k % 2 == 1 { -term } else { term };
    }
    Ok(pre * total)
}

/// `(elsv, bruteforce)` for one profile, both exact.
pub fn elsv_crosscheck(
    g: u32,
    alpha: &Partition,
    hodge: &[HodgeIntegral],
    caps: &EnumerationCaps,
) -> Result<(BigRational, BigRational)> {
    let forward = elsv_forward(g, alpha, hodge)?;
    let brute = hurwitz_bruteforce(&HurwitzQuery::connected(g, alpha.clone()), caps)?;
    Ok((forward, brute))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn find(h: &[HodgeIntegral], a: &[u32], k: u32) -> BigRational {
        h.iter()
            .find(|x| x.a == a && x.k == k)
            .unwrap()
            .value
            .clone()
    }

    #[test]
    fn genus_one_one_point() {
        let h = hodge_from_hurwitz(1, 1, HurwitzRoute::BruteForce, &EnumerationCaps::default())
            .unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(find(&h, &[1], 0), rat(1, 24));
        assert_eq!(find(&h, &[0], 1), rat(1, 24));
    }

    #[test]
    fn genus_zero() {
        let caps = EnumerationCaps::default();
        let h = hodge_from_hurwitz(0, 3, HurwitzRoute::BruteForce, &caps).unwrap();
        assert_eq!(
            h,
            vec![HodgeIntegral {
                g: 0,
                a: vec![0, 0, 0],
                k: 0,
                value: int(1)
            }]
        );
        let h = hodge_from_hurwitz(0, 4, HurwitzRoute::BruteForce, &caps).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.iter().all(|x| x.k == 0 && x.value == int(1)));
    }

    #[test]
    fn forward_examples() {
        let h = hodge_from_hurwitz(1, 1, HurwitzRoute::BruteForce, &EnumerationCaps::default())
            .unwrap();
        assert_eq!(elsv_forward(1, &p("2"), &h).unwrap(), rat(1, 2));
        assert_eq!(elsv_forward(1, &p("1"), &h).unwrap(), int(0));
        let h0 = hodge_from_hurwitz(0, 4, HurwitzRoute::BruteForce, &EnumerationCaps::default())
            .unwrap();
        let alpha = p("1,1,1,1");
        assert_eq!(
            elsv_forward(0, &alpha, &h0).unwrap(),
            crate::hurwitz::hurwitz_genus0(&alpha)
        );
    }

    #[test]
    fn unstable_genus_zero_conventions() {
        for a in ["1", "2", "3", "1,1", "2,1", "3,2"] {
            let alpha = p(a);
            assert_eq!(
                elsv_forward(0, &alpha, &[]).unwrap(),
                crate::hurwitz::hurwitz_genus0(&alpha),
                "{a}"
            );
        }
    }

    #[test]
    fn missing_entry_is_named() {
        let err = elsv_forward(1, &p("2"), &[]).unwrap_err();
        assert!(matches!(err, TautError::MissingHodge { .. }));
    }

    #[test]
    fn rejects_unstable() {
        assert!(
            hodge_from_hurwitz(0, 2, HurwitzRoute::Transfer, &EnumerationCaps::default()).is_err()
        );
    }
}
