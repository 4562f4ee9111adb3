//! Top intersections of ψ-classes on the moduli space of stable curves,
//! `⟨τ_{k_1} ⋯ τ_{k_n}⟩_g = ∫ ψ_1^{k_1} ⋯ ψ_n^{k_n}`.

mod kdv;
mod table;
pub mod virasoro;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{big, int, multinomial, BigRational};

pub use kdv::{correlator, witten_correlator};
pub use table::IntersectionTable;

/// Genus and ψ-exponent multiset, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CorrelatorKey {
    pub g: u32,
    exps: Vec<u32>,
}

impl CorrelatorKey {
    /// Rejects unstable `(g, n)`.
    pub fn new(g: u32, exps: impl Into<Vec<u32>>) -> Result<Self> {
        let exps = exps.into();
        if !stable(g, exps.len()) {
            return domain(format!("({g},{}) is not a stable pair", exps.len()));
        }
        Ok(Self::sorted(g, exps))
    }

    pub(crate) fn sorted(g: u32, mut exps: Vec<u32>) -> Self {
        exps.sort_unstable();
        CorrelatorKey { g, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    /// `3g - 3 + n`.
    pub fn dimension(&self) -> i64 {
        3 * self.g as i64 - 3 + self.n() as i64
    }

    /// Whether `Σ k_i` equals the dimension, the only case with a nonzero value.
    pub fn is_top_degree(&self) -> bool {
        self.exps.iter().map(|&k| k as i64).sum::<i64>() == self.dimension()
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, k) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "tau_{k}")?;
        }
        write!(f, ">_{}", self.g)
    }
}

pub(crate) fn stable(g: u32, n: usize) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

/// `∫_{M̄_{0,n}} ψ^a = (n-3)! / ∏ a_i!`, and zero off the top degree.
pub fn psi_genus0(a: &[u32]) -> BigRational {
    let n = a.len() as i64;
    let sum: i64 = a.iter().map(|&x| x as i64).sum();
    if n < 3 || sum != n - 3 {
        return BigRational::zero();
    }
    let parts: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    big(multinomial(&parts))
}

fn collect_terms(terms: BTreeMap<CorrelatorKey, BigRational>) -> Vec<(CorrelatorKey, BigRational)> {
    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// String equation: `⟨τ_0 ∏ τ_{k_i}⟩_g = Σ_i ⟨⋯ τ_{k_i - 1} ⋯⟩_g`.
///
/// Removes one `τ_0` and returns the right-hand side with equal keys merged.
/// Terms whose exponent would go negative are dropped.
pub fn string_reduce(key: &CorrelatorKey) -> Result<Vec<(CorrelatorKey, BigRational)>> {
    let Some(pos) = key.exps.iter().position(|&k| k == 0) else {
        return domain(format!("{key} has no tau_0 insertion"));
    };
    if !stable(key.g, key.n() - 1) {
        return domain(format!("{key}: nothing to reduce to"));
    }
    let mut rest = key.exps.clone();
    rest.remove(pos);
    let mut terms = BTreeMap::new();
    for i in 0..rest.len() {
        if rest[i] == 0 {
            continue;
        }
        let mut e = rest.clone();
        e[i] -= 1;
        *terms
            .entry(CorrelatorKey::sorted(key.g, e))
            .or_insert_with(BigRational::zero) += int(1);
    }
    Ok(collect_terms(terms))
}

/// Dilaton equation: `⟨τ_1 ∏_{i=1}^{n} τ_{k_i}⟩_g = (2g - 2 + n) ⟨∏ τ_{k_i}⟩_g`.
pub fn dilaton_reduce(key: &CorrelatorKey) -> Result<(CorrelatorKey, BigRational)> {
    let Some(pos) = key.exps.iter().position(|&k| k == 1) else {
        return domain(format!("{key} has no tau_1 insertion"));
    };
    let n = key.n() - 1;
    if !stable(key.g, n) {
        return domain(format!("{key}: nothing to reduce to"));
    }
    let mut rest = key.exps.clone();
    rest.remove(pos);
    let factor = int(2 * key.g as i64 - 2 + n as i64);
    Ok((CorrelatorKey::sorted(key.g, rest), factor))
}
