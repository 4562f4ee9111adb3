//! Exact scalars and the small combinatorial functions everything else is
//! built from: factorials, double factorials, Bernoulli numbers, partitions,
//! the branch-point count and orbifold Euler characteristics.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, TautError};

pub use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q`. The result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || TautError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(big(BigInt::from_str(s).map_err(|_| bad())?)),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod ratstr {
    use super::{format_rational, parse_rational, BigRational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Exact integer power of a rational; negative exponents invert.
pub fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    let mag = exp.unsigned_abs();
    let mut acc = BigRational::one();
    for _ in 0..mag {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(Σ parts)! / ∏ parts!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let denom = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    factorial(total) / denom
}

/// `m!! = m (m-2) (m-4) ⋯`, ending at 1 or 2, with `0!! = (-1)!! = 1`.
///
/// Called as `double_factorial(2k - 1)` this is the product of the first `k`
/// odd numbers, which is the only form the Faber identities use.
pub fn double_factorial(m: i64) -> Result<BigInt> {
    if m < -1 {
        return domain(format!("double factorial of {m} is undefined"));
    }
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// Bernoulli number `B_m` for even `m ≥ 2`, in the convention `B_2 = 1/6`.
///
/// Computed with the Akiyama–Tanigawa table, which only needs `m + 1`
/// rational cells per row.
pub fn bernoulli(m: u32) -> Result<BigRational> {
    if m < 2 || m % 2 == 1 {
        return domain(format!("bernoulli expects an even index >= 2, got {m}"));
    }
    let m = m as usize;
    let mut row: Vec<BigRational> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        row.push(rat(1, j as i64 + 1));
        for i in (1..=j).rev() {
            let diff = &row[i - 1] - &row[i];
            row[i - 1] = diff * int(i as i64);
        }
    }
    Ok(row[0].clone())
}

/// A weakly decreasing sequence of positive integers (a ramification profile).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return domain("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `1^d`.
    pub fn ones(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `d = Σ parts`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `n`, the number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `d`, in reverse lexicographic order.
    pub fn all_of(d: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(d, d, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = TautError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = TautError;

    /// Comma-separated positive integers, e.g. `3,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| TautError::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if parts.is_empty() {
            return Err(TautError::Parse("empty partition".into()));
        }
        Partition::new(parts)
    }
}

/// `# Aut α`: the product of factorials of part multiplicities.
pub fn aut_partition(alpha: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    let parts = alpha.parts();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        acc *= factorial((j - i) as u64);
        i = j;
    }
    acc
}

/// Number of simple branch points `r = 2g + d + n - 2` of a genus `g`,
/// degree `d` cover with `n` preimages of infinity.
pub fn rh_branch_count(g: i64, d: i64, n: i64) -> Result<i64> {
    if g < 0 || d < 1 || n < 1 || n > d {
        return domain(format!(
            "need g >= 0, d >= 1, 1 <= n <= d; got g={g} d={d} n={n}"
        ));
    }
    Ok(2 * g + d + n - 2)
}

/// Orbifold Euler characteristic of `M_g`: `B_{2g} / (2g (2g - 2))`.
pub fn euler_char_mg(g: u32) -> Result<BigRational> {
    if g < 2 {
        return domain(format!("euler_char_mg needs g >= 2, got {g}"));
    }
    let b = bernoulli(2 * g)?;
    let g = g as i64;
    Ok(b / int(2 * g * (2 * g - 2)))
}

/// Orbifold Euler characteristic of `M_{g,n}` for `g ≥ 1`:
/// `(-1)^n (2g + n - 3)! B_{2g} / (2g (2g - 2)!)`.
pub fn euler_char_mgn(g: u32, n: u32) -> Result<BigRational> {
    if g < 1 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return domain(format!(
            "euler_char_mgn needs g >= 1 and 2g-2+n > 0; got ({g},{n})"
        ));
    }
    let b = bernoulli(2 * g)?;
    let num = big(factorial((2 * g + n - 3) as u64)) * b;
    let den = big(factorial((2 * g - 2) as u64) * BigInt::from(2 * g));
    let v = num / den;
    Ok(if n % 2 == 1 { -v } else { v })
}
