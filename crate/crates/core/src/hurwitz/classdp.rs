//! Counting transposition tuples by cut-and-join transfer on conjugacy data.
//!
//! Multiplying a permutation `π` by a transposition `(a b)` either cuts the
//! cycle containing `a` and `b` into two, or joins the two cycles containing
//! them. How many transpositions produce each outcome depends only on the
//! cycle lengths, and whether the orbits of the generated group merge depends
//! only on which orbit each cycle lies in. The state is therefore the multiset
//! of orbits, each recorded as the cycle type of `π` restricted to it, and the
//! number of tuples reaching each state is propagated step by step.
//!
//! This reaches degrees far beyond the depth-first enumerator and is checked
//! against it wherever both run.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::exact::Partition;

/// Orbits, each a weakly decreasing list of cycle lengths; the list of orbits
/// is sorted so that relabelled states coincide.
type ClassState = Vec<Vec<u32>>;

fn normalize(mut s: ClassState) -> ClassState {
    for b in s.iter_mut() {
        b.sort_unstable_by(|x, y| y.cmp(x));
    }
    s.sort_unstable();
    s
}

fn cycle_count(s: &ClassState) -> usize {
    s.iter().map(Vec::len).sum()
}

/// Successor states with the number of transpositions leading to each.
fn transitions(s: &ClassState) -> Vec<(ClassState, u64)> {
    let mut out = Vec::new();
    // cuts
    for (bi, block) in s.iter().enumerate() {
        for (ci, &len) in block.iter().enumerate() {
            for i in 1..=len / 2 {
                let mult = if 2 * i == len { len / 2 } else { len };
                let mut next = s.clone();
                let b = &mut next[bi];
                b.remove(ci);
                b.push(i);
                b.push(len - i);
                out.push((normalize(next), mult as u64));
            }
        }
    }
    // joins
    let positions: Vec<(usize, usize)> = s
        .iter()
        .enumerate()
        .flat_map(|(bi, b)| (0..b.len()).map(move |ci| (bi, ci)))
        .collect();
    for x in 0..positions.len() {
        for y in x + 1..positions.len() {
            let (b1, c1) = positions[x];
            let (b2, c2) = positions[y];
            let (l1, l2) = (s[b1][c1], s[b2][c2]);
            let mut next = s.clone();
            if b1 == b2 {
                let b = &mut next[b1];
                // c1 < c2 within the same block
                b.remove(c2);
                b.remove(c1);
                b.push(l1 + l2);
            } else {
                let mut merged: Vec<u32> = Vec::new();
                for (ci, &l) in s[b1].iter().enumerate() {
                    if ci != c1 {
                        merged.push(l);
                    }
                }
                for (ci, &l) in s[b2].iter().enumerate() {
                    if ci != c2 {
                        merged.push(l);
                    }
                }
                merged.push(l1 + l2);
                // b1 < b2
                next.remove(b2);
                next[b1] = merged;
            }
            out.push((normalize(next), (l1 * l2) as u64));
        }
    }
    out
}

/// Number of `r`-tuples of transpositions in `S_d` whose product, multiplied
/// onto a start permutation of cycle type `start`, has cycle type `target`;
/// with `connected`, only tuples generating a transitive group together with
/// the start permutation are counted.
pub fn count_tuples(start: &Partition, r: usize, target: &Partition, connected: bool) -> BigUint {
    let n_target = target.len();
    let init: ClassState = if connected {
        // a start cycle is one orbit on its own until something joins it
        start.parts().iter().map(|&p| vec![p]).collect()
    } else {
        vec![start.parts().to_vec()]
    };
    let mut layer: HashMap<ClassState, BigUint> = HashMap::new();
    layer.insert(normalize(init), BigUint::one());
    for step in 0..r {
        let remaining = r - step - 1;
        let mut next: HashMap<ClassState, BigUint> = HashMap::new();
        for (state, count) in &layer {
            for (succ, mult) in transitions(state) {
                let cycles = cycle_count(&succ);
                if cycles.abs_diff(n_target) > remaining {
                    continue;
                }
                if connected && succ.len() - 1 > remaining {
                    continue;
                }
                *next.entry(succ).or_insert_with(BigUint::zero) += count * mult;
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .filter(|(s, _)| {
            (!connected || s.len() == 1) && {
                let mut all: Vec<u32> = s.iter().flatten().copied().collect();
                all.sort_unstable_by(|a, b| b.cmp(a));
                all == target.parts()
            }
        })
        .map(|(_, c)| c)
        .sum()
}
