//! Correlators from the KdV equation.
//!
//! In terms of correlators with a labelled insertion set `S`, the KdV equation
//! for `U = ∂_0² F` reads
//!
//! ```text
//! (2m+1) ⟨τ_m τ_0² τ_S⟩_g = Σ_{I⊔J=S, g_1+g_2=g} ⟨τ_{m-1} τ_0 τ_I⟩_{g_1} ⟨τ_0³ τ_J⟩_{g_2}
//!                         + 2 Σ_{I⊔J=S, g_1+g_2=g} ⟨τ_{m-1} τ_0² τ_I⟩_{g_1} ⟨τ_0² τ_J⟩_{g_2}
//!                         + ¼ ⟨τ_{m-1} τ_0⁴ τ_S⟩_{g-1}.
//! ```
//!
//! To evaluate `K = ⟨τ_k τ_S⟩_g` with `k` maximal and no `τ_0` or `τ_1`, take
//! `m = k + 2`. The string equation expands the left side into
//! `Y = ⟨τ_{k+1} τ_0 τ_S⟩_g` plus terms with a larger maximal index, and `Y`
//! also appears once on the right (with `⟨τ_0³⟩_0 = 1`). Solving for `Y` and
//! applying the string equation once more recovers `K`. Every other term has
//! lower genus, fewer points, or the same `(g, n)` with a larger maximal
//! exponent, which is bounded by the dimension.

use std::collections::HashSet;

use num_traits::Zero;

use super::{dilaton_reduce, psi_genus0, stable, string_reduce, CorrelatorKey, IntersectionTable};
use crate::error::{Result, TautError};
use crate::exact::{int, rat, BigRational};

/// `⟨τ_{k_1} ⋯ τ_{k_n}⟩_g`, memoized into `table`.
pub fn witten_correlator(
    key: &CorrelatorKey,
    table: &mut IntersectionTable,
) -> Result<BigRational> {
    Evaluator {
        table,
        active: HashSet::new(),
    }
    .eval(key.g, key.exps().to_vec())
}

/// [`witten_correlator`] with a throwaway table.
pub fn correlator(g: u32, exps: &[u32]) -> Result<BigRational> {
    let key = CorrelatorKey::new(g, exps.to_vec())?;
    witten_correlator(&key, &mut IntersectionTable::new())
}

struct Evaluator<'a> {
    table: &'a mut IntersectionTable,
    active: HashSet<CorrelatorKey>,
}

fn top_degree(g: u32, exps: &[u32]) -> bool {
    stable(g, exps.len())
        && exps.iter().map(|&k| k as i64).sum::<i64>() == 3 * g as i64 - 3 + exps.len() as i64
}

fn with(front: &[u32], rest: &[u32]) -> Vec<u32> {
    front.iter().chain(rest).copied().collect()
}

impl Evaluator<'_> {
    /// Unstable and off-degree correlators evaluate to zero.
    fn eval(&mut self, g: u32, exps: Vec<u32>) -> Result<BigRational> {
        if !top_degree(g, &exps) {
            return Ok(BigRational::zero());
        }
        if g == 0 {
            return Ok(psi_genus0(&exps));
        }
        let key = CorrelatorKey::sorted(g, exps);
        if let Some(v) = self.table.get(&key) {
            return Ok(v.clone());
        }
        if !self.active.insert(key.clone()) {
            return Err(TautError::Invariant(format!("recursion revisits {key}")));
        }
        let value = self.reduce(&key)?;
        self.active.remove(&key);
        self.table.insert(key, value.clone())?;
        Ok(value)
    }

    fn reduce(&mut self, key: &CorrelatorKey) -> Result<BigRational> {
        if key.exps().contains(&0) {
            let mut total = BigRational::zero();
            for (k, c) in string_reduce(key)? {
                total += c * self.eval(k.g, k.exps().to_vec())?;
            }
            return Ok(total);
        }
        if key.exps().contains(&1) {
            if key.g == 1 && key.n() == 1 {
                return Ok(rat(1, 24));
            }
            let (k, c) = dilaton_reduce(key)?;
            return Ok(c * self.eval(k.g, k.exps().to_vec())?);
        }
        self.kdv(key)
    }

    fn product(&mut self, g1: u32, a: Vec<u32>, g2: u32, b: Vec<u32>) -> Result<BigRational> {
        if !top_degree(g1, &a) || !top_degree(g2, &b) {
            return Ok(BigRational::zero());
        }
        let x = self.eval(g2, b)?;
        if x.is_zero() {
            return Ok(x);
        }
        Ok(self.eval(g1, a)? * x)
    }

    fn kdv(&mut self, key: &CorrelatorKey) -> Result<BigRational> {
        let g = key.g;
        let (&k, s) = key
            .exps()
            .split_last()
            .expect("stable key with g >= 1 and no tau_0");
        let m = k + 2;

        let lowered = |j: usize| -> Vec<u32> {
            let mut e = s.to_vec();
            e[j] -= 1;
            e
        };

        let mut a = BigRational::zero();
        for j in 0..s.len() {
            a += self.eval(g, with(&[m, 0], &lowered(j)))?;
        }

        let mut b = BigRational::zero();
        let full = (1usize << s.len()) - 1;
        for mask in 0..=full {
            let (mut i_part, mut j_part) = (Vec::new(), Vec::new());
            for (bit, &e) in s.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    i_part.push(e);
                } else {
                    j_part.push(e);
                }
            }
            for g1 in 0..=g {
                let g2 = g - g1;
                if !(g1 == g && mask == full) {
                    b += self.product(
                        g1,
                        with(&[m - 1, 0], &i_part),
                        g2,
                        with(&[0, 0, 0], &j_part),
                    )?;
                }
                b += int(2)
                    * self.product(
                        g1,
                        with(&[m - 1, 0, 0], &i_part),
                        g2,
                        with(&[0, 0], &j_part),
                    )?;
            }
        }
        if g >= 1 {
            b += rat(1, 4) * self.eval(g - 1, with(&[m - 1, 0, 0, 0, 0], s))?;
        }

        let two_m = int(2 * m as i64);
        let y = (b - int(2 * m as i64 + 1) * a) / two_m;

        let mut rest = BigRational::zero();
        for j in 0..s.len() {
            rest += self.eval(g, with(&[k + 1], &lowered(j)))?;
        }
        Ok(y - rest)
    }
}
