//! Enumeration of stable graphs up to isomorphism.
//!
//! Connected graphs are generated codimension by codimension from the smooth
//! graph: every stable graph with `E + 1` edges degenerates from one with `E`
//! edges by adding a loop at a vertex of positive genus or by splitting a
//! vertex in two along a new edge. Disconnected graphs are products of
//! connected ones over the ways of distributing legs and genus.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::{DualGraph, GraphClass, Leg, Vertex};
use crate::error::{domain, Result, TautError};
use crate::exact::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub connected: bool,
    /// Only graphs whose components are trees.
    pub trees_only: bool,
    /// Bound on `3g - 3 + n`.
    pub max_dim: i64,
    /// Bound on the number of classes kept at any stage.
    pub max_classes: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            connected: true,
            trees_only: false,
            max_dim: 8,
            max_classes: 200_000,
        }
    }
}

/// All stable graphs of genus `g` with legs `1..=n`, one per isomorphism
/// class, sorted by canonical form.
pub fn enumerate_stable(g: i64, n: u32, connected: bool) -> Result<Vec<GraphClass>> {
    enumerate_stable_with(
        g,
        n,
        &EnumerateOptions {
            connected,
            ..Default::default()
        },
    )
}

pub fn enumerate_stable_with(g: i64, n: u32, opts: &EnumerateOptions) -> Result<Vec<GraphClass>> {
    if opts.connected && g < 0 {
        return domain(format!("connected graphs have genus >= 0, got {g}"));
    }
    let dim = 3 * g - 3 + n as i64;
    if dim > opts.max_dim {
        return Err(TautError::ResourceCap {
            what: "dimension 3g-3+n",
            value: dim,
            cap: opts.max_dim,
        });
    }
    let labels: Vec<u32> = (1..=n).collect();
    let graphs = if opts.connected {
        connected(g as u32, &labels, opts)?
    } else {
        disconnected(g, &labels, opts)?
    };
    let mut out: Vec<GraphClass> = graphs
        .into_par_iter()
        .map(|c| {
            let automorphisms = c.automorphisms();
            GraphClass {
                canonical: c,
                automorphisms,
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

fn stable(g: i64, val: usize) -> bool {
    2 * g - 2 + val as i64 > 0
}

fn check_cap(len: usize, opts: &EnumerateOptions) -> Result<()> {
    if len > opts.max_classes {
        return Err(TautError::ResourceCap {
            what: "graph classes",
            value: len as i64,
            cap: opts.max_classes as i64,
        });
    }
    Ok(())
}

/// Canonical connected stable graphs of genus `g` carrying `labels`.
fn connected(g: u32, labels: &[u32], opts: &EnumerateOptions) -> Result<Vec<DualGraph>> {
    if !stable(g as i64, labels.len()) {
        return Ok(Vec::new());
    }
    let smooth = DualGraph {
        vertices: vec![Vertex::new(g)],
        edges: Vec::new(),
        legs: labels
            .iter()
            .map(|&label| Leg {
                label,
                vertex: 0,
                psi: 0,
            })
            .collect(),
    };
    let mut all = vec![smooth.clone()];
    let mut level = vec![smooth];
    while !level.is_empty() {
        let next: HashSet<DualGraph> = level
            .par_iter()
            .flat_map_iter(|x| degenerations(x, opts.trees_only))
            .map(|x| x.canonical())
            .collect();
        check_cap(all.len() + next.len(), opts)?;
        level = next.into_iter().collect();
        level.sort();
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

/// Graphs with one more edge whose contraction gives `x`.
fn degenerations(x: &DualGraph, trees_only: bool) -> Vec<DualGraph> {
    let mut out = Vec::new();
    for v in 0..x.vertices.len() {
        let gv = x.vertices[v].genus;
        if !trees_only && gv >= 1 {
            let mut y = x.clone();
            y.vertices[v].genus -= 1;
            out.push(y.edge(v, v));
        }
        // half-edges at v: legs by index, then edge ends as (edge, end)
        let legs: Vec<usize> = (0..x.legs.len())
            .filter(|&i| x.legs[i].vertex == v)
            .collect();
        let mut ends: Vec<(usize, bool)> = Vec::new();
        for (i, e) in x.edges.iter().enumerate() {
            if e.a.vertex == v {
                ends.push((i, false));
            }
            if e.b.vertex == v {
                ends.push((i, true));
            }
        }
        let h = legs.len() + ends.len();
        let w = x.vertices.len();
        for mask in 0u64..(1 << h) {
            let moved = mask.count_ones() as usize;
            for g1 in 0..=gv {
                let g2 = gv - g1;
                if !stable(g1 as i64, h - moved + 1) || !stable(g2 as i64, moved + 1) {
                    continue;
                }
                let mut y = x.clone();
                y.vertices[v].genus = g1;
                y.vertices.push(Vertex::new(g2));
                for (bit, &i) in legs.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        y.legs[i].vertex = w;
                    }
                }
                for (bit, &(i, end)) in ends.iter().enumerate() {
                    if mask >> (legs.len() + bit) & 1 == 1 {
                        if end {
                            y.edges[i].b.vertex = w;
                        } else {
                            y.edges[i].a.vertex = w;
                        }
                    }
                }
                out.push(y.edge(v, w));
            }
        }
    }
    out
}

type ComponentSpec = Vec<(u32, Vec<u32>)>;

/// Ways to write a genus-`g` curve with legs `labels` as a union of stable
/// connected pieces `(genus, legs)`.
fn component_specs(g: i64, labels: &[u32]) -> Vec<ComponentSpec> {
    fn go(g: i64, rest: &[u32], used: i64, acc: &mut ComponentSpec, out: &mut Vec<ComponentSpec>) {
        let Some((&first, others)) = rest.split_first() else {
            let r = g - 1 - used;
            if r < 0 {
                return;
            }
            for p in Partition::all_of(r as u32) {
                let mut spec = acc.clone();
                spec.extend(p.parts().iter().map(|&k| (k + 1, Vec::new())));
                out.push(spec);
            }
            return;
        };
        for mask in 0u64..(1 << others.len()) {
            let mut block = vec![first];
            let mut left = Vec::new();
            for (bit, &l) in others.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    block.push(l);
                } else {
                    left.push(l);
                }
            }
            let top = g - used + (left.len() / 3) as i64;
            for gc in 0..=top.max(-1) {
                if !stable(gc, block.len()) {
                    continue;
                }
                acc.push((gc as u32, block.clone()));
                go(g, &left, used + gc - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, labels, 0, &mut Vec::new(), &mut out);
    out
}

fn disconnected(g: i64, labels: &[u32], opts: &EnumerateOptions) -> Result<Vec<DualGraph>> {
    let mut memo: HashMap<(u32, Vec<u32>), Vec<DualGraph>> = HashMap::new();
    let mut seen: BTreeSet<DualGraph> = BTreeSet::new();
    for spec in component_specs(g, labels) {
        for (gc, ls) in &spec {
            let key = (*gc, ls.clone());
            if let std::collections::hash_map::Entry::Vacant(e) = memo.entry(key) {
                let list = connected(*gc, ls, opts)?;
                e.insert(list);
            }
        }
        let mut partial = vec![DualGraph::default()];
        for (gc, ls) in spec {
            let list = &memo[&(gc, ls)];
            let mut next = Vec::with_capacity(partial.len() * list.len());
            for p in &partial {
                for c in list {
                    next.push(p.disjoint_union(c));
                }
            }
            check_cap(next.len(), opts)?;
            partial = next;
        }
        seen.extend(
            partial
                .into_par_iter()
                .map(|x| x.canonical())
                .collect::<Vec<_>>(),
        );
        check_cap(seen.len(), opts)?;
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(g: i64, n: u32, connected: bool) -> usize {
        enumerate_stable(g, n, connected).unwrap().len()
    }

    fn zero_dim(g: i64, n: u32, connected: bool) -> Vec<GraphClass> {
        enumerate_stable(g, n, connected)
            .unwrap()
            .into_iter()
            .filter(|c| c.dimension() == 0)
            .collect()
    }

    #[test]
    fn small_counts() {
        for (g, n) in [(0, 0), (0, 1), (0, 2), (1, 0)] {
            assert_eq!(count(g, n, true), 0, "({g},{n})");
        }
        assert_eq!(count(0, 3, true), 1);
        assert_eq!(count(0, 4, true), 4);
        assert_eq!(count(1, 1, true), 2);
    }

    #[test]
    fn genus_one_two_points() {
        let pts = zero_dim(1, 2, true);
        assert_eq!(pts.len(), 2);
        assert!(pts
            .iter()
            .all(|c| c.codim() == 2 && c.canonical.vertices.iter().all(|v| v.genus == 0)));
    }

    #[test]
    fn five_points() {
        let all = enumerate_stable(0, 5, true).unwrap();
        assert_eq!(all.iter().filter(|c| c.dimension() == 0).count(), 15);
        assert_eq!(all.iter().filter(|c| c.codim() == 1).count(), 10);
        assert_eq!(all.len(), 26);
    }

    #[test]
    fn genus_two_unmarked() {
        // 7 strata of M̄_2
        let all = enumerate_stable(2, 0, true).unwrap();
        assert_eq!(all.len(), 7);
        let auts: u64 = all
            .iter()
            .filter(|c| c.dimension() == 0)
            .map(|c| c.automorphisms)
            .sum();
        assert_eq!(auts, 8 + 12);
    }

    #[test]
    fn disconnected_six_points() {
        let all = enumerate_stable(-1, 6, false).unwrap();
        assert_eq!(all.iter().filter(|c| c.dimension() == 0).count(), 10);
        assert!(all
            .iter()
            .all(|c| c.genus() == -1 && c.canonical.is_stable()));
    }

    #[test]
    fn disconnected_includes_connected() {
        let conn = enumerate_stable(1, 2, true).unwrap();
        let all = enumerate_stable(1, 2, false).unwrap();
        assert!(conn.iter().all(|c| all.contains(c)));
        // plus genus-0 with legs {1,2} and a legless genus-2 piece is
        // impossible, so only (M̄_{1,1} ⊔ M̄_{1,1}) strata are new: 2 × 2 classes
        assert_eq!(all.len(), conn.len() + 4);
    }

    #[test]
    fn caps() {
        assert!(matches!(
            enumerate_stable(4, 0, true),
            Err(TautError::ResourceCap {
                what: "dimension 3g-3+n",
                ..
            })
        ));
        let opts = EnumerateOptions {
            max_classes: 10,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_stable_with(0, 6, &opts),
            Err(TautError::ResourceCap {
                what: "graph classes",
                ..
            })
        ));
        assert!(enumerate_stable(-1, 3, true).is_err());
    }

    #[test]
    fn codim_bound_attained_by_trivalent() {
        for (g, n) in [(0u32, 5u32), (1, 2), (2, 1)] {
            let all = enumerate_stable(g as i64, n, true).unwrap();
            let top = 3 * g as usize + n as usize - 3;
            assert_eq!(all.iter().map(|c| c.codim()).max(), Some(top));
            for c in all.iter().filter(|c| c.codim() == top) {
                let x = &c.canonical;
                assert_eq!(x.vertices.len(), 2 * g as usize + n as usize - 2);
                assert!(
                    (0..x.vertices.len()).all(|v| x.vertices[v].genus == 0 && x.valence(v) == 3)
                );
            }
        }
    }
}
