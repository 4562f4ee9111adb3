//! Depth-first enumeration of transposition tuples.
//!
//! The running product `π = ρ σ_1 ⋯ σ_t` and the orbit partition of
//! `⟨ρ, σ_1, …, σ_t⟩` are maintained incrementally. A branch is abandoned as
//! soon as the remaining transpositions cannot reach the target cycle count
//! (each transposition changes it by exactly one) or cannot connect the
//! remaining orbits.

use rayon::prelude::*;

use crate::exact::Partition;

/// Largest degree the fixed-size state arrays support.
pub const MAX_ENUM_DEGREE: usize = 16;

/// All transpositions of `S_d` as `(a, b)` with `a < b`.
pub fn transpositions(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(d * d.saturating_sub(1) / 2);
    for a in 0..d {
        for b in a + 1..d {
            out.push((a, b));
        }
    }
    out
}

#[derive(Clone, Copy)]
struct State {
    perm: [u8; MAX_ENUM_DEGREE],
    orbit: [u8; MAX_ENUM_DEGREE],
    cycles: u32,
    orbits: u32,
}

/// A fixed enumeration problem: start permutation, number of transpositions,
/// target cycle type and whether transitivity is required.
pub struct TupleSearch<'a> {
    d: usize,
    r: usize,
    target: &'a Partition,
    connected: bool,
    trans: Vec<(usize, usize)>,
    start: State,
}

impl<'a> TupleSearch<'a> {
    /// `start` is the permutation the tuple is multiplied onto (the identity
    /// for single Hurwitz numbers, `ρ ∈ C(α)` for double ones).
    pub fn new(start: &[usize], r: usize, target: &'a Partition, connected: bool) -> Self {
        let d = start.len();
        assert!(
            d <= MAX_ENUM_DEGREE,
            "degree {d} exceeds enumeration arrays"
        );
        let mut perm = [0u8; MAX_ENUM_DEGREE];
        for (i, &e) in start.iter().enumerate() {
            perm[i] = e as u8;
        }
        let mut orbit = [0u8; MAX_ENUM_DEGREE];
        let mut cycles = 0;
        let mut seen = [false; MAX_ENUM_DEGREE];
        for s in 0..d {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                orbit[i] = s as u8;
                i = perm[i] as usize;
            }
        }
        TupleSearch {
            d,
            r,
            target,
            connected,
            trans: transpositions(d),
            start: State {
                perm,
                orbit,
                cycles,
                orbits: cycles,
            },
        }
    }

    pub fn transpositions(&self) -> &[(usize, usize)] {
        &self.trans
    }

    fn viable(&self, s: &State, remaining: usize) -> bool {
        let n = self.target.len() as i64;
        if (s.cycles as i64 - n).unsigned_abs() as usize > remaining {
            return false;
        }
        !(self.connected && (s.orbits as usize - 1) > remaining)
    }

    fn step(&self, s: &State, t: usize) -> State {
        let (a, b) = self.trans[t];
        let mut n = *s;
        // a and b share a cycle of π iff walking from a reaches b
        let mut same = false;
        let mut i = s.perm[a] as usize;
        while i != a {
            if i == b {
                same = true;
                break;
            }
            i = s.perm[i] as usize;
        }
        n.perm.swap(a, b);
        if same {
            n.cycles += 1;
        } else {
            n.cycles -= 1;
        }
        let (oa, ob) = (s.orbit[a], s.orbit[b]);
        if oa != ob {
            for o in n.orbit[..self.d].iter_mut() {
                if *o == ob {
                    *o = oa;
                }
            }
            n.orbits -= 1;
        }
        n
    }

    fn accepts(&self, s: &State) -> bool {
        if s.cycles as usize != self.target.len() || (self.connected && s.orbits != 1) {
            return false;
        }
        let mut lens = Vec::with_capacity(self.target.len());
        let mut seen = [false; MAX_ENUM_DEGREE];
        for st in 0..self.d {
            if seen[st] {
                continue;
            }
            let mut len = 0;
            let mut i = st;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = s.perm[i] as usize;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens == self.target.parts()
    }

    fn dfs<F: FnMut(&[usize])>(&self, s: &State, prefix: &mut Vec<usize>, visit: &mut F) {
        let remaining = self.r - prefix.len();
        if remaining == 0 {
            if self.accepts(s) {
                visit(prefix);
            }
            return;
        }
        for t in 0..self.trans.len() {
            let next = self.step(s, t);
            if !self.viable(&next, remaining - 1) {
                continue;
            }
            prefix.push(t);
            self.dfs(&next, prefix, visit);
            prefix.pop();
        }
    }

    /// Calls `visit` with the transposition indices of every accepted tuple,
    /// restricted to tuples whose first entry is `first` when given.
    pub fn for_each_accepted<F: FnMut(&[usize])>(&self, first: Option<usize>, mut visit: F) {
        let mut prefix = Vec::with_capacity(self.r);
        match first {
            None => {
                if self.viable(&self.start, self.r) {
                    self.dfs(&self.start, &mut prefix, &mut visit)
                }
            }
            Some(t) => {
                if self.r == 0 {
                    return;
                }
                let s = self.step(&self.start, t);
                if self.viable(&s, self.r - 1) {
                    prefix.push(t);
                    self.dfs(&s, &mut prefix, &mut visit);
                }
            }
        }
    }

    /// Number of accepted tuples whose first transposition is `first`.
    pub fn count_bucket(&self, first: usize) -> u128 {
        let mut c = 0u128;
        self.for_each_accepted(Some(first), |_| c += 1);
        c
    }

    pub fn count_serial(&self) -> u128 {
        let mut c = 0u128;
        self.for_each_accepted(None, |_| c += 1);
        c
    }

    /// Parallel count, bucketed by the first transposition.
    pub fn count(&self) -> u128 {
        if self.r == 0 {
            return self.count_serial();
        }
        (0..self.trans.len())
            .into_par_iter()
            .map(|t| self.count_bucket(t))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_listed_counts() {
        // S_2, three transpositions, product (01): only ((01),(01),(01))
        let two: Partition = "2".parse().unwrap();
        assert_eq!(TupleSearch::new(&[0, 1], 3, &two, true).count(), 1);
        // S_2, two transpositions with identity product
        let ones: Partition = "1,1".parse().unwrap();
        assert_eq!(TupleSearch::new(&[0, 1], 2, &ones, true).count(), 1);
        // S_3: ordered pairs of transpositions whose product is a 3-cycle
        let three: Partition = "3".parse().unwrap();
        assert_eq!(TupleSearch::new(&[0, 1, 2], 2, &three, true).count(), 6);
        // S_1, empty tuple
        let one: Partition = "1".parse().unwrap();
        assert_eq!(TupleSearch::new(&[0], 0, &one, true).count(), 1);
    }

    #[test]
    fn connectivity_filter() {
        // (01)(01) in S_3 leaves point 2 alone
        let p: Partition = "1,1,1".parse().unwrap();
        let conn = TupleSearch::new(&[0, 1, 2], 2, &p, true).count();
        let disc = TupleSearch::new(&[0, 1, 2], 2, &p, false).count();
        assert_eq!(conn, 0);
        assert_eq!(disc, 3);
    }
}
