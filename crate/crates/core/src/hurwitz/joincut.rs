//! Join–cut recursion for Faber–Hurwitz classes, expressed as multiples of
//! the generator `Z_{g,1}`.
//!
//! For a profile `α ⊢ d` with `l` parts,
//!
//! ```text
//! F_α = Σ_k Σ_{i+j=α_k} i j H⁰_{α'} F_{α''} C(d+l-2; |α'|+l(α')-2, |α''|+l(α'')-1)
//!     + Σ_{a<b} F_{α with α_a, α_b joined}
//!     + Σ_a α_a^{2g+1} H⁰_α
//! ```
//!
//! where the cut piece `i` goes to the genus-0 profile `α'`, the piece `j` to
//! the genus-`g` profile `α''`, and every other part of `α` is sent to one of
//! the two sides in all possible ways. Cut terms strictly lower `d`; join
//! terms keep `d` and lower the length, so the recursion bottoms out at
//! `α = (1)`, where it returns `1`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{big, int, multinomial, BigRational, Partition};
use crate::hurwitz::hurwitz_genus0;

/// `F^g_α = coeff · Z_{g,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaberHurwitzCoeff {
    pub g: u32,
    pub alpha: Partition,
    #[serde(with = "crate::exact::ratstr")]
    pub coeff: BigRational,
}

/// Memoizing evaluator for one genus.
pub struct JoinCut {
    g: u32,
    memo: HashMap<Vec<u32>, BigRational>,
}

impl JoinCut {
    pub fn new(g: u32) -> Result<Self> {
        if g < 2 {
            return domain(format!("Faber–Hurwitz coefficients need g >= 2, got {g}"));
        }
        Ok(JoinCut {
            g,
            memo: HashMap::new(),
        })
    }

    pub fn coeff(&mut self, alpha: &Partition) -> Result<BigRational> {
        if alpha.is_empty() {
            return domain("Faber–Hurwitz coefficient of the empty profile");
        }
        Ok(self.eval(alpha.parts().to_vec()))
    }

    fn eval(&mut self, parts: Vec<u32>) -> BigRational {
        if let Some(v) = self.memo.get(&parts) {
            return v.clone();
        }
        let alpha = Partition::new(parts.clone()).expect("positive parts");
        let d = alpha.size() as u64;
        let l = parts.len();
        let mut total = BigRational::zero();

        // cut terms
        for k in 0..l {
            let others: Vec<u32> = parts
                .iter()
                .enumerate()
                .filter(|&(idx, _)| idx != k)
                .map(|(_, &p)| p)
                .collect();
            for i in 1..parts[k] {
                let j = parts[k] - i;
                for mask in 0u64..(1 << others.len()) {
                    let mut left = vec![i];
                    let mut right = vec![j];
                    for (bit, &p) in others.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            left.push(p);
                        } else {
                            right.push(p);
                        }
                    }
                    let left = Partition::new(left).expect("positive parts");
                    let right = Partition::new(right).expect("positive parts");
                    let a = left.size() as u64 + left.len() as u64 - 2;
                    let b = right.size() as u64 + right.len() as u64 - 1;
                    debug_assert_eq!(a + b, d + l as u64 - 2);
                    let binom = big(multinomial(&[a, b]));
                    let h0 = hurwitz_genus0(&left);
                    let f = self.eval(right.parts().to_vec());
                    total += int((i * j) as i64) * h0 * f * binom;
                }
            }
        }

        // join terms
        for a in 0..l {
            for b in a + 1..l {
                let mut joined: Vec<u32> = parts
                    .iter()
                    .enumerate()
                    .filter(|&(idx, _)| idx != a && idx != b)
                    .map(|(_, &p)| p)
                    .collect();
                joined.push(parts[a] + parts[b]);
                joined.sort_unstable_by(|x, y| y.cmp(x));
                total += self.eval(joined);
            }
        }

        // contributions of the genus-g curve over the right component
        let h0 = hurwitz_genus0(&alpha);
        for &p in &parts {
            total += big(num_bigint::BigInt::from(p).pow(2 * self.g + 1)) * &h0;
        }

        self.memo.insert(parts, total.clone());
        total
    }
}

pub fn faber_hurwitz_coeff(g: u32, alpha: &Partition) -> Result<FaberHurwitzCoeff> {
    let coeff = JoinCut::new(g)?.coeff(alpha)?;
    Ok(FaberHurwitzCoeff {
        g,
        alpha: alpha.clone(),
        coeff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_is_one() {
        for g in 2..=6 {
            let c = faber_hurwitz_coeff(g, &"1".parse().unwrap()).unwrap();
            assert_eq!(c.coeff, int(1));
        }
    }

    #[test]
    fn genus_two_degree_two_anchor() {
        // one cut term (1·1·H⁰_(1)·F_(1)·C(1;0,1) = 1) plus 2^5·H⁰_(2) = 16
        let c = faber_hurwitz_coeff(2, &"2".parse().unwrap()).unwrap();
        assert_eq!(c.coeff, int(17));
    }

    #[test]
    fn rejects_low_genus_and_empty() {
        assert!(faber_hurwitz_coeff(1, &"1".parse().unwrap()).is_err());
        assert!(JoinCut::new(2)
            .unwrap()
            .coeff(&Partition::new(vec![]).unwrap())
            .is_err());
    }

    #[test]
    fn positive_on_small_profiles() {
        let mut jc = JoinCut::new(3).unwrap();
        for d in 1..=5 {
            for alpha in Partition::all_of(d) {
                let v = jc.coeff(&alpha).unwrap();
                assert!(v > BigRational::zero(), "{alpha}");
            }
        }
    }
}
