//! Faber's intersection number identities on `M_g` and the κ-monomial values
//! they determine.
//!
//! For `d = (d_1, …, d_n)` with `Σ d_j = g - 2`,
//!
//! ```text
//! (2g-3+n)! (2g-1)!! / ((2g-1)! ∏ (2d_j+1)!!) · κ_{g-2} = Σ_{σ ∈ S_n} κ_σ
//! ```
//!
//! where `κ_σ` has one factor `κ_{Σ d}` per cycle of `σ`, the sum running over
//! the entries of that cycle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, TautError};
use crate::exact::{big, double_factorial, factorial, format_rational, BigRational, Partition};

/// Default bound on `n` in [`faber_rhs`].
pub const MAX_FABER_POINTS: usize = 8;

/// A product `κ_{i_1} ⋯ κ_{i_m}` of κ-classes with positive indices, stored
/// in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct KappaMonomial(Vec<u32>);

impl KappaMonomial {
    pub fn new(mut indices: Vec<u32>) -> Result<Self> {
        if indices.contains(&0) {
            return domain("kappa indices must be positive");
        }
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Ok(KappaMonomial(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<u32>> for KappaMonomial {
    type Error = TautError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        KappaMonomial::new(v)
    }
}

impl From<KappaMonomial> for Vec<u32> {
    fn from(k: KappaMonomial) -> Vec<u32> {
        k.0
    }
}

impl fmt::Display for KappaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "kappa_{}", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// One identity: `lhs_coeff · κ_{g-2} = Σ rhs[m] · m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaberIdentity {
    pub g: u32,
    pub d: Vec<u32>,
    #[serde(with = "crate::exact::ratstr")]
    pub lhs_coeff: BigRational,
    #[serde(serialize_with = "named_keys")]
    pub rhs: BTreeMap<KappaMonomial, u64>,
}

fn named_keys<S: serde::Serializer, V: Serialize>(
    m: &BTreeMap<KappaMonomial, V>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v)))
}

impl FaberIdentity {
    pub fn new(g: u32, d: &[u32]) -> Result<Self> {
        Ok(FaberIdentity {
            g,
            d: d.to_vec(),
            lhs_coeff: faber_lhs_coeff(g, d)?,
            rhs: faber_rhs(d)?,
        })
    }
}

/// `Σ_{σ ∈ S_n} κ_σ` as monomial multiplicities.
///
/// Permutations are grouped by their cycle set partition; a block of size `b`
/// carries `(b-1)!` cyclic orders.
pub fn faber_rhs(d: &[u32]) -> Result<BTreeMap<KappaMonomial, u64>> {
    faber_rhs_capped(d, MAX_FABER_POINTS)
}

pub fn faber_rhs_capped(d: &[u32], max_points: usize) -> Result<BTreeMap<KappaMonomial, u64>> {
    if d.is_empty() {
        return domain("faber_rhs needs n >= 1");
    }
    if d.contains(&0) {
        return domain("faber_rhs needs every d_j >= 1");
    }
    if d.len() > max_points {
        return Err(TautError::ResourceCap {
            what: "points n",
            value: d.len() as i64,
            cap: max_points as i64,
        });
    }
    let mut out = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    set_partitions(d.len(), 0, &mut blocks, &mut |blocks| {
        let mut weight = 1u64;
        let mut idx = Vec::with_capacity(blocks.len());
        for b in blocks {
            weight *= (1..b.len() as u64).product::<u64>();
            idx.push(b.iter().map(|&i| d[i]).sum());
        }
        *out.entry(KappaMonomial::new(idx).expect("positive"))
            .or_insert(0) += weight;
    });
    Ok(out)
}

fn set_partitions(
    n: usize,
    i: usize,
    blocks: &mut Vec<Vec<usize>>,
    f: &mut impl FnMut(&[Vec<usize>]),
) {
    if i == n {
        f(blocks);
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(i);
        set_partitions(n, i + 1, blocks, f);
        blocks[b].pop();
    }
    blocks.push(vec![i]);
    set_partitions(n, i + 1, blocks, f);
    blocks.pop();
}

/// `(2g-3+n)! (2g-1)!! / ((2g-1)! ∏ (2d_j+1)!!)`, for `Σ d_j = g - 2`.
pub fn faber_lhs_coeff(g: u32, d: &[u32]) -> Result<BigRational> {
    if g < 2 {
        return domain(format!("Faber identities need g >= 2, got {g}"));
    }
    let w: u32 = d.iter().sum();
    if w != g - 2 {
        return domain(format!(
            "exponents {d:?} have weight {w}, expected g-2 = {}",
            g - 2
        ));
    }
    let n = d.len() as i64;
    let g = g as i64;
    let num = factorial((2 * g - 3 + n) as u64) * double_factorial(2 * g - 1)?;
    let mut den = factorial((2 * g - 1) as u64);
    for &x in d {
        den *= double_factorial(2 * x as i64 + 1)?;
    }
    Ok(BigRational::new(num, den))
}

/// The take-two form: `ψ_1^{α_1} ⋯ ψ_n^{α_n}` on the rational-tails space,
/// pushed to `M_g`, as a multiple of `κ_{g-2}`, for `α_i > 1` and
/// `Σ α_i = g - 2 + n`. Shares [`faber_lhs_coeff`] via `d_j = α_j - 1`.
pub fn take_two_coeff(g: u32, alpha: &[u32]) -> Result<BigRational> {
    if alpha.iter().any(|&a| a < 2) {
        return domain("take-two form needs every exponent > 1");
    }
    let d: Vec<u32> = alpha.iter().map(|&a| a - 1).collect();
    faber_lhs_coeff(g, &d)
}

/// Values of weight-`(g-2)` κ-monomials as multiples of `κ_{g-2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaSolution {
    pub g: u32,
    #[serde(serialize_with = "named_rationals")]
    pub values: BTreeMap<KappaMonomial, BigRational>,
    /// Monomials the identities leave undetermined.
    pub unresolved: Vec<KappaMonomial>,
}

fn named_rationals<S: serde::Serializer>(
    m: &BTreeMap<KappaMonomial, BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.to_string(), format_rational(v))))
}

/// All identities with every `d_j ≥ 1` for genus `g`, one per multiset `d`.
pub fn faber_identities(g: u32) -> Result<Vec<FaberIdentity>> {
    if g < 2 {
        return domain(format!("Faber identities need g >= 2, got {g}"));
    }
    if g == 2 {
        return Ok(Vec::new());
    }
    Partition::all_of(g - 2)
        .into_iter()
        .map(|p| FaberIdentity::new(g, p.parts()))
        .collect()
}

/// Solves the identities for every weight-`(g-2)` monomial with
/// `κ_{g-2} ↦ 1`. For `g = 2` there are no monomials of positive weight and
/// the solution is empty.
pub fn kappa_solve(g: u32) -> Result<KappaSolution> {
    let ids = faber_identities(g)?;
    if ids.is_empty() {
        return Ok(KappaSolution {
            g,
            values: BTreeMap::new(),
            unresolved: Vec::new(),
        });
    }
    let monos: Vec<KappaMonomial> = Partition::all_of(g - 2)
        .into_iter()
        .map(|p| KappaMonomial::new(p.parts().to_vec()).expect("positive"))
        .collect();
    let generator = KappaMonomial::new(vec![g - 2])?;
    let unknowns: Vec<&KappaMonomial> = monos.iter().filter(|m| **m != generator).collect();
    let col: BTreeMap<&KappaMonomial, usize> =
        unknowns.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let u = unknowns.len();

    let mut rows: Vec<Vec<BigRational>> = ids
        .iter()
        .map(|id| {
            let mut row = vec![BigRational::zero(); u + 1];
            let mut rhs = id.lhs_coeff.clone();
            for (m, &c) in &id.rhs {
                if *m == generator {
                    rhs -= big(BigInt::from(c));
                } else {
                    row[col[m]] += big(BigInt::from(c));
                }
            }
            row[u] = rhs;
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..u {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[u].is_zero()) {
        return Err(TautError::Inconsistent(format!(
            "Faber identities at g={g}"
        )));
    }

    let mut values = BTreeMap::new();
    values.insert(generator, BigRational::one());
    let mut unresolved = Vec::new();
    for (c, m) in unknowns.iter().enumerate() {
        match pivots.iter().position(|&pc| pc == c) {
            // a pivot row that still involves a free column is not determined
            Some(r) if (0..u).all(|j| j == c || rows[r][j].is_zero()) => {
                values.insert((*m).clone(), rows[r][u].clone());
            }
            _ => unresolved.push((*m).clone()),
        }
    }
    Ok(KappaSolution {
        g,
        values,
        unresolved,
    })
}

/// `(1/(g-1)) 2^{2g-5} (g-2)!²`, the closed form for `κ_1^{g-2}`, `g ≥ 3`.
pub fn kappa1_power_closed_form(g: u32) -> Result<BigRational> {
    if g < 3 {
        return domain(format!("closed form needs g >= 3, got {g}"));
    }
    let f = factorial((g - 2) as u64);
    Ok(BigRational::new(
        BigInt::from(2).pow(2 * g - 5) * &f * &f,
        BigInt::from(g - 1),
    ))
}
