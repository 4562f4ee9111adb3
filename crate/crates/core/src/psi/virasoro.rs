//! The Virasoro constraints `L_{-1} e^F = 0` and `L_0 e^F = 0`, read off
//! coefficient by coefficient.
//!
//! With `F_g = Σ_T ⟨τ_T⟩_g t^T / Aut(T)`,
//!
//! ```text
//! L_{-1}:  -∂_0 F + Σ_i t_{i+1} ∂_i F + t_0²/2 [g = 0]
//! L_0:     -3/2 ∂_1 F + Σ_i (2i+1)/2 t_i ∂_i F + 1/16 [g = 1]
//! ```
//!
//! The coefficient of `t^T / Aut(T)` is computed by differentiating and
//! multiplying monomials directly, which gives a linear form in correlators
//! that must vanish. It reproduces the string and dilaton equations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{stable, witten_correlator, CorrelatorKey, IntersectionTable};
use crate::error::Result;
use crate::exact::{big, factorial, int, rat, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VirasoroOp {
    LMinus1,
    L0,
}

/// `Σ coeff · ⟨key⟩ + constant`, the coefficient of one monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirasoroExpansion {
    pub terms: Vec<(CorrelatorKey, BigRational)>,
    pub constant: BigRational,
}

type Monomial = BTreeMap<u32, u32>;

fn monomial(t: &[u32]) -> Monomial {
    let mut m = Monomial::new();
    for &k in t {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

fn aut(m: &Monomial) -> BigInt {
    m.values().map(|&c| factorial(c as u64)).product()
}

fn exps_of(m: &Monomial) -> Vec<u32> {
    m.iter()
        .flat_map(|(&k, &c)| std::iter::repeat_n(k, c as usize))
        .collect()
}

/// One operator term `coeff · t_j ∂_i` (or `coeff · ∂_i` without `j`).
struct OpTerm {
    coeff: BigRational,
    times: Option<u32>,
    diff: u32,
}

fn op_terms(op: VirasoroOp, t: &Monomial) -> Vec<OpTerm> {
    let mut out = Vec::new();
    match op {
        VirasoroOp::LMinus1 => {
            out.push(OpTerm {
                coeff: int(-1),
                times: None,
                diff: 0,
            });
            for &j in t.keys().filter(|&&j| j >= 1) {
                out.push(OpTerm {
                    coeff: int(1),
                    times: Some(j),
                    diff: j - 1,
                });
            }
        }
        VirasoroOp::L0 => {
            out.push(OpTerm {
                coeff: rat(-3, 2),
                times: None,
                diff: 1,
            });
            for &j in t.keys() {
                out.push(OpTerm {
                    coeff: rat(2 * j as i64 + 1, 2),
                    times: Some(j),
                    diff: j,
                });
            }
        }
    }
    out
}

/// Coefficient of `t^T / Aut(T)` in the genus-`g` part of the constraint.
pub fn expansion(op: VirasoroOp, g: u32, t: &[u32]) -> VirasoroExpansion {
    let target = monomial(t);
    let aut_t = big(aut(&target));
    let mut acc: BTreeMap<CorrelatorKey, BigRational> = BTreeMap::new();
    for term in op_terms(op, &target) {
        // the monomial U of F with t_j ∂_i t^U ∝ t^T
        let mut u = target.clone();
        if let Some(j) = term.times {
            let c = u.get_mut(&j).expect("j occurs in T");
            *c -= 1;
            if *c == 0 {
                u.remove(&j);
            }
        }
        *u.entry(term.diff).or_insert(0) += 1;
        let exps = exps_of(&u);
        if !stable(g, exps.len()) {
            continue;
        }
        // ∂_i (t^U / Aut U) = mult_U(i) t^{U - e_i} / Aut U
        let coeff = term.coeff * int(u[&term.diff] as i64) / big(aut(&u)) * &aut_t;
        *acc.entry(CorrelatorKey::sorted(g, exps))
            .or_insert_with(BigRational::zero) += coeff;
    }
    let constant = match op {
        VirasoroOp::LMinus1 if g == 0 && t == [0, 0] => int(1),
        VirasoroOp::L0 if g == 1 && t.is_empty() => rat(1, 16),
        _ => BigRational::zero(),
    };
    VirasoroExpansion {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        constant,
    }
}

/// Value of an expansion on the correlators; zero when the constraint holds.
pub fn residual(e: &VirasoroExpansion, table: &mut IntersectionTable) -> Result<BigRational> {
    let mut total = e.constant.clone();
    for (key, c) in &e.terms {
        total += c * witten_correlator(key, table)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::{dilaton_reduce, string_reduce};

    #[test]
    fn lminus1_matches_string() {
        let e = expansion(VirasoroOp::LMinus1, 1, &[1, 2]);
        let lhs = CorrelatorKey::new(1, vec![0, 1, 2]).unwrap();
        let mut terms = e.terms.clone();
        let pos = terms.iter().position(|(k, _)| *k == lhs).unwrap();
        assert_eq!(terms.remove(pos).1, int(-1));
        assert_eq!(terms, string_reduce(&lhs).unwrap());
    }

    #[test]
    fn l0_matches_dilaton_on_top_degree() {
        let e = expansion(VirasoroOp::L0, 2, &[2, 3]);
        let lhs = CorrelatorKey::new(2, vec![1, 2, 3]).unwrap();
        let (k, f) = dilaton_reduce(&lhs).unwrap();
        let c_lhs = e
            .terms
            .iter()
            .find(|(key, _)| *key == lhs)
            .unwrap()
            .1
            .clone();
        let c_rest = e.terms.iter().find(|(key, _)| *key == k).unwrap().1.clone();
        assert_eq!(-c_rest / c_lhs, f);
    }

    #[test]
    fn base_constants_balance() {
        let mut t = IntersectionTable::new();
        let e = expansion(VirasoroOp::LMinus1, 0, &[0, 0]);
        assert_eq!(residual(&e, &mut t).unwrap(), int(0));
        let e = expansion(VirasoroOp::L0, 1, &[]);
        assert_eq!(residual(&e, &mut t).unwrap(), int(0));
    }

    #[test]
    fn residuals_vanish() {
        let mut t = IntersectionTable::new();
        for (g, tt) in [
            (1u32, vec![2u32, 2]),
            (2, vec![3, 3]),
            (2, vec![0, 4, 2]),
            (1, vec![1, 1, 1]),
        ] {
            for op in [VirasoroOp::LMinus1, VirasoroOp::L0] {
                let e = expansion(op, g, &tt);
                assert_eq!(residual(&e, &mut t).unwrap(), int(0), "{op:?} g={g} {tt:?}");
            }
        }
    }
}
