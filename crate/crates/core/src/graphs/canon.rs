//! Canonical forms and automorphism counts.
//!
//! Vertices are first coloured by iterated refinement (genus, κ, legs, then
//! the multiset of neighbouring colours with the ψ-powers on each edge). The
//! canonical form is the smallest relabelled graph over all vertex orders that
//! list colour classes in increasing order, trying every order within a
//! class. Legs keep their labels throughout.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DualGraph, Edge, HalfEdge, Leg};

/// An isomorphism class: the canonical representative and `#Aut`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphClass {
    pub canonical: DualGraph,
    pub automorphisms: u64,
}

impl GraphClass {
    pub fn genus(&self) -> i64 {
        self.canonical.genus()
    }

    pub fn codim(&self) -> usize {
        self.canonical.codim()
    }

    pub fn dimension(&self) -> i64 {
        self.canonical.dimension()
    }
}

fn refine(g: &DualGraph) -> Vec<usize> {
    let nv = g.vertices.len();
    let mut legs_at: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nv];
    for l in &g.legs {
        legs_at[l.vertex].push((l.label, l.psi));
    }
    for v in legs_at.iter_mut() {
        v.sort_unstable();
    }
    let base: Vec<_> = (0..nv)
        .map(|v| {
            let mut kappa = g.vertices[v].kappa.clone();
            kappa.sort_unstable();
            (g.vertices[v].genus, kappa, legs_at[v].clone())
        })
        .collect();
    let mut colour = rank(&base);
    loop {
        let keys: Vec<_> = (0..nv)
            .map(|v| {
                let mut nbrs: Vec<(bool, u32, u32, usize)> = Vec::new();
                for e in &g.edges {
                    if e.a.vertex == v {
                        nbrs.push((e.is_loop(), e.a.psi, e.b.psi, colour[e.b.vertex]));
                    }
                    if e.b.vertex == v {
                        nbrs.push((e.is_loop(), e.b.psi, e.a.psi, colour[e.a.vertex]));
                    }
                }
                nbrs.sort_unstable();
                (colour[v], nbrs)
            })
            .collect();
        let next = rank(&keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

/// The graph with old vertex `order[i]` renamed to `i`, edges oriented and
/// sorted, legs sorted by label.
fn relabel(g: &DualGraph, order: &[usize]) -> DualGraph {
    let mut pos = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let vertices = order
        .iter()
        .map(|&old| {
            let mut v = g.vertices[old].clone();
            v.kappa.sort_unstable();
            v
        })
        .collect();
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| {
            Edge {
                a: HalfEdge {
                    vertex: pos[e.a.vertex],
                    psi: e.a.psi,
                },
                b: HalfEdge {
                    vertex: pos[e.b.vertex],
                    psi: e.b.psi,
                },
            }
            .normalized()
        })
        .collect();
    edges.sort_unstable();
    let mut legs: Vec<Leg> = g
        .legs
        .iter()
        .map(|l| Leg {
            vertex: pos[l.vertex],
            ..*l
        })
        .collect();
    legs.sort_unstable();
    DualGraph {
        vertices,
        edges,
        legs,
    }
}

/// Canonical representative and the number of vertex orders attaining it.
fn search(g: &DualGraph) -> (DualGraph, u64) {
    let colour = refine(g);
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        by_colour.entry(c).or_default().push(v);
    }
    let blocks: Vec<Vec<usize>> = by_colour.into_values().collect();
    let mut best: Option<DualGraph> = None;
    let mut hits = 0u64;
    let mut order = Vec::with_capacity(g.vertices.len());
    walk(g, &blocks, 0, &mut order, &mut best, &mut hits);
    (best.unwrap_or_default(), hits)
}

fn walk(
    g: &DualGraph,
    blocks: &[Vec<usize>],
    i: usize,
    order: &mut Vec<usize>,
    best: &mut Option<DualGraph>,
    hits: &mut u64,
) {
    if i == blocks.len() {
        let cand = relabel(g, order);
        match best {
            Some(b) if cand > *b => {}
            Some(b) if cand == *b => *hits += 1,
            _ => {
                *best = Some(cand);
                *hits = 1;
            }
        }
        return;
    }
    permute(&mut blocks[i].clone(), 0, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        walk(g, blocks, i + 1, order, best, hits);
        order.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

impl DualGraph {
    /// Representative shared by exactly the graphs isomorphic to `self`
    /// (legs fixed pointwise, decorations respected).
    pub fn canonical(&self) -> DualGraph {
        search(self).0
    }

    /// Order of the automorphism group: vertex symmetries, times `k!` for
    /// each set of `k` interchangeable parallel edges, times 2 for each loop
    /// whose ends carry equal decorations.
    pub fn automorphisms(&self) -> u64 {
        let (canon, vertex_auts) = search(self);
        let mut total = vertex_auts;
        let mut i = 0;
        while i < canon.edges.len() {
            let mut j = i;
            while j < canon.edges.len() && canon.edges[j] == canon.edges[i] {
                j += 1;
            }
            total *= (1..=(j - i) as u64).product::<u64>();
            i = j;
        }
        for e in &canon.edges {
            if e.is_loop() && e.a.psi == e.b.psi {
                total *= 2;
            }
        }
        total
    }

    pub fn class(&self) -> GraphClass {
        GraphClass {
            canonical: self.canonical(),
            automorphisms: self.automorphisms(),
        }
    }
}

pub fn is_isomorphic(a: &DualGraph, b: &DualGraph) -> bool {
    a.vertices.len() == b.vertices.len()
        && a.edges.len() == b.edges.len()
        && a.legs.len() == b.legs.len()
        && a.canonical() == b.canonical()
}
