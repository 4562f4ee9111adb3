//! Exact multivariate interpolation in the monomial basis.
//!
//! The unknowns are the coefficients of every monomial whose total degree lies
//! in a window `[degmin, degmax]`; each sample contributes one linear
//! equation. Samples on exactly the shifted simplex grid are solved by
//! forward differences, anything else by Gauss–Jordan elimination over the
//! rationals. Symmetry is never imposed, so an asymmetric result signals bad
//! input rather than being hidden by the basis.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, TautError};
use crate::exact::{big, BigRational};

/// One evaluation `P(point) = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricPolySample {
    pub point: Vec<u32>,
    #[serde(with = "crate::exact::ratstr")]
    pub value: BigRational,
}

/// Coefficients keyed by exponent vector.
pub type PolyCoeffs = BTreeMap<Vec<u32>, BigRational>;

/// Exponent vectors of length `n` with total degree in `[degmin, degmax]`,
/// ordered by degree and then lexicographically.
pub fn monomials_in_window(n: usize, degmin: u32, degmax: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = rest;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rest).rev() {
            cur[i] = e;
            go(i + 1, rest - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if degmin == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    for deg in degmin..=degmax {
        let mut cur = vec![0; n];
        go(0, deg, &mut cur, &mut out);
    }
    out
}

/// Points `α ∈ Z_{≥1}^n` with `Σ (α_i - 1) ≤ degmax`.
///
/// This shifted simplex is unisolvent for all polynomials of total degree at
/// most `degmax`, so any degree window inside it is determined uniquely.
pub fn simplex_grid(n: usize, degmax: u32) -> Vec<Vec<u32>> {
    monomials_in_window(n, 0, degmax)
        .into_iter()
        .map(|e| e.into_iter().map(|x| x + 1).collect())
        .collect()
}

fn monomial_value(exps: &[u32], point: &[u32]) -> BigInt {
    exps.iter()
        .zip(point)
        .fold(BigInt::one(), |acc, (&e, &x)| acc * BigInt::from(x).pow(e))
}

pub fn evaluate(coeffs: &PolyCoeffs, point: &[u32]) -> BigRational {
    coeffs
        .iter()
        .map(|(e, c)| c * big(monomial_value(e, point)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Solves for the coefficients of a polynomial in `n` variables supported on
/// total degrees `degmin..=degmax` that takes the sampled values.
///
/// Returns only the nonzero coefficients. Fails with
/// [`TautError::InsufficientSamples`] if the samples do not pin down every
/// coefficient and [`TautError::DegreeBoundsViolated`] if no polynomial in the
/// window fits them.
pub fn interpolate_poly(
    samples: &[SymmetricPolySample],
    n: usize,
    degmin: u32,
    degmax: u32,
) -> Result<PolyCoeffs> {
    if degmin > degmax {
        return domain(format!("empty degree window {degmin}..={degmax}"));
    }
    for s in samples {
        if s.point.len() != n {
            return domain(format!(
                "sample point {:?} does not have {n} coordinates",
                s.point
            ));
        }
        if s.point.contains(&0) {
            return domain(format!("sample point {:?} has a zero coordinate", s.point));
        }
    }
    let out = if is_simplex_grid(samples, n, degmax) {
        newton_simplex(samples, n, degmin, degmax)?
    } else {
        gauss_jordan(samples, n, degmin, degmax)?
    };
    for s in samples {
        if evaluate(&out, &s.point) != s.value {
            return Err(TautError::Invariant(format!(
                "nonzero residual at {:?}",
                s.point
            )));
        }
    }
    Ok(out)
}

fn is_simplex_grid(samples: &[SymmetricPolySample], n: usize, degmax: u32) -> bool {
    let grid = simplex_grid(n, degmax);
    if grid.len() != samples.len() {
        return false;
    }
    let points: HashSet<&[u32]> = samples.iter().map(|s| s.point.as_slice()).collect();
    points.len() == grid.len() && grid.iter().all(|p| points.contains(p.as_slice()))
}

/// Coefficients of `C(x - 1, j)` as a polynomial in `x`, lowest degree first.
fn shifted_binomial(j: u32) -> Vec<BigRational> {
    let mut poly = vec![BigRational::one()];
    for t in 1..=j as i64 {
        // multiply by (x - t) / t
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c * big(BigInt::from(t));
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(t));
        poly = next.into_iter().map(|c| c * &inv).collect();
    }
    poly
}

/// Interpolation on the full shifted simplex by forward differences: the
/// coefficient of `∏ C(α_i - 1, j_i)` is `Δ^j P` at `(1, …, 1)`, and the grid
/// is closed under the steps involved.
fn newton_simplex(
    samples: &[SymmetricPolySample],
    n: usize,
    degmin: u32,
    degmax: u32,
) -> Result<PolyCoeffs> {
    let mut f: HashMap<Vec<u32>, BigRational> = samples
        .iter()
        .map(|s| (s.point.iter().map(|&x| x - 1).collect(), s.value.clone()))
        .collect();
    let mut keys: Vec<Vec<u32>> = f.keys().cloned().collect();
    for axis in 0..n {
        keys.sort_by(|a, b| b[axis].cmp(&a[axis]));
        for k in 1..=degmax {
            for j in keys.iter().filter(|j| j[axis] >= k) {
                let mut prev = j.clone();
                prev[axis] -= 1;
                let d = f[&prev].clone();
                *f.get_mut(j).expect("grid point") -= d;
            }
        }
    }
    let binoms: Vec<Vec<BigRational>> = (0..=degmax).map(shifted_binomial).collect();
    let mut coeffs: HashMap<Vec<u32>, BigRational> = HashMap::new();
    for (j, c) in &f {
        if c.is_zero() {
            continue;
        }
        let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(Vec::new(), c.clone())];
        for &ji in j {
            let b = &binoms[ji as usize];
            partial = partial
                .into_iter()
                .flat_map(|(e, v)| {
                    b.iter()
                        .enumerate()
                        .filter(|(_, bc)| !bc.is_zero())
                        .map(move |(d, bc)| {
                            let mut e2 = e.clone();
                            e2.push(d as u32);
                            (e2, &v * bc)
                        })
                })
                .collect();
        }
        for (e, v) in partial {
            *coeffs.entry(e).or_insert_with(BigRational::zero) += v;
        }
    }
    let mut out = PolyCoeffs::new();
    for (e, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let deg: u32 = e.iter().sum();
        if deg < degmin || deg > degmax {
            return Err(TautError::DegreeBoundsViolated { degmin, degmax });
        }
        out.insert(e, c);
    }
    Ok(out)
}

fn gauss_jordan(
    samples: &[SymmetricPolySample],
    n: usize,
    degmin: u32,
    degmax: u32,
) -> Result<PolyCoeffs> {
    let monos = monomials_in_window(n, degmin, degmax);
    let unknowns = monos.len();

    // Augmented rows [a_1 .. a_m | value]; integer-valued except the last entry.
    let mut rows: Vec<Vec<BigRational>> = samples
        .iter()
        .map(|s| {
            let mut row: Vec<BigRational> = monos
                .iter()
                .map(|e| big(monomial_value(e, &s.point)))
                .collect();
            row.push(s.value.clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::with_capacity(unknowns);
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    if rows[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(TautError::DegreeBoundsViolated { degmin, degmax });
    }
    if rank < unknowns {
        return Err(TautError::InsufficientSamples { rank, unknowns });
    }
    let mut out = PolyCoeffs::new();
    for (r, &col) in pivot_cols.iter().enumerate() {
        let v = rows[r][unknowns].clone();
        if !v.is_zero() {
            out.insert(monos[col].clone(), v);
        }
    }
    Ok(out)
}
