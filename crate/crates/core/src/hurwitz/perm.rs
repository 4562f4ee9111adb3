use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::Partition;

/// A permutation of `{0, …, d-1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermWord {
    entries: Vec<usize>,
}

impl PermWord {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let d = entries.len();
        let mut seen = vec![false; d];
        for &e in &entries {
            if e >= d || seen[e] {
                return domain(format!("{entries:?} is not a permutation"));
            }
            seen[e] = true;
        }
        Ok(PermWord { entries })
    }

    pub fn identity(d: usize) -> Self {
        PermWord {
            entries: (0..d).collect(),
        }
    }

    pub fn transposition(d: usize, a: usize, b: usize) -> Result<Self> {
        if a == b || a >= d || b >= d {
            return domain(format!("({a} {b}) is not a transposition in S_{d}"));
        }
        let mut p = Self::identity(d);
        p.entries.swap(a, b);
        Ok(p)
    }

    /// The permutation with the given cycles; unlisted points are fixed.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut e: Vec<usize> = (0..d).collect();
        for c in cycles {
            for i in 0..c.len() {
                if c[i] >= d {
                    return domain(format!("point {} out of range for S_{d}", c[i]));
                }
                e[c[i]] = c[(i + 1) % c.len()];
            }
        }
        PermWord::new(e)
    }

    /// A fixed representative of the conjugacy class with cycle type `alpha`:
    /// consecutive points form each cycle.
    pub fn of_cycle_type(alpha: &Partition) -> Self {
        let mut cycles = Vec::new();
        let mut next = 0;
        for &p in alpha.parts() {
            cycles.push((next..next + p as usize).collect::<Vec<_>>());
            next += p as usize;
        }
        PermWord::from_cycles(next, &cycles).expect("consecutive cycles form a permutation")
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn apply(&self, i: usize) -> usize {
        self.entries[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PermWord) -> PermWord {
        assert_eq!(self.degree(), other.degree());
        PermWord {
            entries: other.entries.iter().map(|&i| self.entries[i]).collect(),
        }
    }

    pub fn inverse(&self) -> PermWord {
        let mut inv = vec![0; self.degree()];
        for (i, &e) in self.entries.iter().enumerate() {
            inv[e] = i;
        }
        PermWord { entries: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.entries[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect())
            .expect("cycle lengths are positive")
    }

    pub fn is_transposition(&self) -> bool {
        let moved = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, &e)| *i != e)
            .count();
        moved == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let p = PermWord::new(vec![0, 2, 1, 4, 7, 8, 3, 5, 6]).unwrap();
        assert_eq!(p.compose(&p.inverse()), PermWord::identity(9));
        let t = PermWord::transposition(3, 0, 1).unwrap();
        assert_eq!(t.compose(&t), PermWord::identity(3));
        assert!(t.is_transposition());
    }

    #[test]
    fn cycle_types() {
        let alpha: Partition = "3,2,2,1".parse().unwrap();
        let p = PermWord::of_cycle_type(&alpha);
        assert_eq!(p.cycle_type(), alpha);
        assert!(PermWord::new(vec![0, 0]).is_err());
        assert!(PermWord::transposition(2, 1, 1).is_err());
    }
}
