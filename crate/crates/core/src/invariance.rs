//! Y.-P. Lee's operator `r_l` on formal combinations of ψ-decorated dual
//! graphs.
//!
//! `r_l` sends a graph of genus `g` with legs `1..=n` to a combination of
//! graphs of genus `g - 1` with legs `1..=n+2`, lowering the class dimension
//! by `l`. It is the sum of three kinds of terms:
//!
//! * edge cutting: for each directed edge (a loop has one direction) the
//!   starting end becomes leg `n+1`, the ending end leg `n+2`; one term adds
//!   `ψ^l` at `n+1`, another adds `ψ^l` at `n+2` with sign `(-1)^{l-1}`;
//! * genus reduction: for each vertex and `0 ≤ m < l`, lower its genus by one
//!   and attach `n+1` with `ψ^m` and `n+2` with `ψ^{l-1-m}`, sign `(-1)^{m+1}`;
//! * vertex splitting: for each vertex and `0 ≤ m < l`, split it into two
//!   unconnected vertices in every way (genus and half-edges), the first
//!   carrying `n+1` with `ψ^m`, the second `n+2` with `ψ^{l-1-m}`, sign
//!   `(-1)^{m+1}`.
//!
//! Unstable graphs are dropped, as are graphs whose decorations exceed the
//! dimension of some vertex. A graph of class dimension zero is replaced by
//! its degree on the connected component of `M̄•_{g-1,n+2}` it lies on, since
//! zero-dimensional tautological classes are determined by those degrees.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, TautError};
use crate::exact::{int, BigRational};
use crate::graphs::{DualGraph, Leg};
use crate::psi::{witten_correlator, CorrelatorKey, IntersectionTable};

/// Connected component of `M̄•_{g,n}`: `(genus, legs)` of each piece, sorted.
pub type ComponentKey = Vec<(i64, Vec<u32>)>;

/// A rational combination of decorated graphs of genus `g` with legs
/// `1..=n`, plus multiples of the point class on components of `M̄•_{g,n}`.
/// Graphs are stored in canonical form; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct GraphSum {
    g: i64,
    n: u32,
    terms: BTreeMap<DualGraph, BigRational>,
    points: BTreeMap<ComponentKey, BigRational>,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl GraphSum {
    pub fn new(g: i64, n: u32) -> Self {
        GraphSum {
            g,
            n,
            terms: BTreeMap::new(),
            points: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> i64 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<DualGraph, BigRational> {
        &self.terms
    }

    pub fn points(&self) -> &BTreeMap<ComponentKey, BigRational> {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.points.is_empty()
    }

    /// Adds `coeff · graph`. The graph must have genus `g` and legs `1..=n`.
    pub fn add_graph(&mut self, graph: &DualGraph, coeff: BigRational) -> Result<()> {
        graph.validate()?;
        if graph.genus() != self.g || graph.leg_labels() != (1..=self.n).collect::<Vec<_>>() {
            return domain(format!(
                "graph of genus {} with legs {:?} does not belong to a sum over ({}, {})",
                graph.genus(),
                graph.leg_labels(),
                self.g,
                self.n
            ));
        }
        bump(&mut self.terms, graph.canonical(), coeff);
        Ok(())
    }

    /// Adds `coeff` times the point class of the component `key`.
    pub fn add_point(&mut self, mut key: ComponentKey, coeff: BigRational) -> Result<()> {
        for (_, legs) in key.iter_mut() {
            legs.sort_unstable();
        }
        key.sort();
        let genus: i64 = key.iter().map(|(g, _)| g - 1).sum::<i64>() + 1;
        let mut labels: Vec<u32> = key.iter().flat_map(|(_, l)| l.iter().copied()).collect();
        labels.sort_unstable();
        if genus != self.g || labels != (1..=self.n).collect::<Vec<_>>() {
            return domain("point component does not match the sum's genus and legs");
        }
        bump(&mut self.points, key, coeff);
        Ok(())
    }

    fn merge_scaled(&mut self, other: &GraphSum, c: &BigRational) {
        for (k, v) in &other.terms {
            bump(&mut self.terms, k.clone(), v * c);
        }
        for (k, v) in &other.points {
            bump(&mut self.points, k.clone(), v * c);
        }
    }

    /// `self + c · other`; both must live on the same `(g, n)`.
    pub fn add_scaled(&self, other: &GraphSum, c: &BigRational) -> Result<GraphSum> {
        if (self.g, self.n) != (other.g, other.n) {
            return domain("sums over different (g, n)");
        }
        let mut out = self.clone();
        out.merge_scaled(other, c);
        Ok(out)
    }

    /// Renames legs `a` and `b`.
    pub fn swap_legs(&self, a: u32, b: u32) -> GraphSum {
        let swap = |l: u32| {
            if l == a {
                b
            } else if l == b {
                a
            } else {
                l
            }
        };
        let mut out = GraphSum::new(self.g, self.n);
        for (graph, c) in &self.terms {
            let mut x = graph.clone();
            for leg in x.legs.iter_mut() {
                leg.label = swap(leg.label);
            }
            bump(&mut out.terms, x.canonical(), c.clone());
        }
        for (key, c) in &self.points {
            let mut k: ComponentKey = key
                .iter()
                .map(|(g, ls)| (*g, ls.iter().map(|&l| swap(l)).collect()))
                .collect();
            for (_, ls) in k.iter_mut() {
                ls.sort_unstable();
            }
            k.sort();
            bump(&mut out.points, k, c.clone());
        }
        out
    }
}

impl Add for &GraphSum {
    type Output = Result<GraphSum>;

    fn add(self, rhs: &GraphSum) -> Result<GraphSum> {
        self.add_scaled(rhs, &BigRational::one())
    }
}

impl Mul<&GraphSum> for &BigRational {
    type Output = GraphSum;

    fn mul(self, rhs: &GraphSum) -> GraphSum {
        let mut out = GraphSum::new(rhs.g, rhs.n);
        out.merge_scaled(rhs, self);
        out
    }
}

/// `r_l(S)`.
pub fn rl_apply(s: &GraphSum, l: u32) -> Result<GraphSum> {
    if l == 0 {
        return domain("r_l needs l >= 1");
    }
    if let Some(x) = s.terms.keys().find(|x| x.has_kappa()) {
        return Err(TautError::UnsupportedDecoration(format!(
            "vertex classes are not supported by r_l: {x:?}"
        )));
    }
    let (g, n) = (s.g - 1, s.n + 2);
    let parts: Vec<Result<GraphSum>> = s
        .terms
        .par_iter()
        .map(|(x, c)| {
            let mut out = GraphSum::new(g, n);
            let mut table = IntersectionTable::new();
            for (y, sign) in rl_graph(x, s.n, l) {
                place(&mut out, y, c * sign, &mut table)?;
            }
            Ok(out)
        })
        .collect();
    let mut total = GraphSum::new(g, n);
    for p in parts {
        total.merge_scaled(&p?, &BigRational::one());
    }
    Ok(total)
}

fn sign(k: u32) -> BigRational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// The raw terms of `r_l(x)` before filtering.
fn rl_graph(x: &DualGraph, n: u32, l: u32) -> Vec<(DualGraph, BigRational)> {
    let (p, q) = (n + 1, n + 2);
    let mut out = Vec::new();

    for (i, e) in x.edges.iter().enumerate() {
        let directions = if e.is_loop() {
            vec![(e.a, e.b)]
        } else {
            vec![(e.a, e.b), (e.b, e.a)]
        };
        for (start, end) in directions {
            let mut cut = x.clone();
            cut.edges.remove(i);
            let base = cut
                .psi_leg(p, start.vertex, start.psi)
                .psi_leg(q, end.vertex, end.psi);
            let mut y = base.clone();
            let first = y.legs.len() - 2;
            y.legs[first].psi += l;
            out.push((y, int(1)));
            let mut y = base;
            let last = y.legs.len() - 1;
            y.legs[last].psi += l;
            out.push((y, sign(l - 1)));
        }
    }

    for v in 0..x.vertices.len() {
        let gv = x.vertices[v].genus;
        for m in 0..l {
            if gv >= 1 {
                let mut y = x.clone();
                y.vertices[v].genus -= 1;
                out.push((y.psi_leg(p, v, m).psi_leg(q, v, l - 1 - m), sign(m + 1)));
            }
            for y in splittings(x, v) {
                let w = x.vertices.len();
                out.push((y.psi_leg(p, v, m).psi_leg(q, w, l - 1 - m), sign(m + 1)));
            }
        }
    }
    out
}

/// `x` with vertex `v` split into `v` and a new unconnected vertex, over all
/// genus splits and all assignments of the half-edges at `v`.
fn splittings(x: &DualGraph, v: usize) -> Vec<DualGraph> {
    let gv = x.vertices[v].genus;
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
    let mut out = Vec::new();
    for mask in 0u64..(1 << h) {
        for g1 in 0..=gv {
            let mut y = x.clone();
            y.vertices[v].genus = g1;
            y.vertices.push(crate::graphs::Vertex::new(gv - g1));
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
            out.push(y);
        }
    }
    out
}

/// Filters one raw term and adds it to `out`, collapsing dimension zero.
fn place(
    out: &mut GraphSum,
    y: DualGraph,
    c: BigRational,
    table: &mut IntersectionTable,
) -> Result<()> {
    if !y.is_stable() || y.class_dimension() < 0 {
        return Ok(());
    }
    for v in 0..y.vertices.len() {
        let vdim = 3 * y.vertices[v].genus as i64 - 3 + y.valence(v) as i64;
        if y.vertex_psi(v).iter().sum::<u32>() as i64 > vdim {
            return Ok(());
        }
    }
    if y.class_dimension() > 0 {
        bump(&mut out.terms, y.canonical(), c);
        return Ok(());
    }
    let mut degree = BigRational::one();
    for v in 0..y.vertices.len() {
        let key = CorrelatorKey::new(y.vertices[v].genus, y.vertex_psi(v))?;
        degree *= witten_correlator(&key, table)?;
        if degree.is_zero() {
            return Ok(());
        }
    }
    bump(&mut out.points, component_key(&y), c * degree);
    Ok(())
}

fn component_key(y: &DualGraph) -> ComponentKey {
    let mut key: ComponentKey = y
        .components()
        .into_iter()
        .map(|comp| {
            let gv: i64 = comp.iter().map(|&v| y.vertices[v].genus as i64).sum();
            let e = y
                .edges
                .iter()
                .filter(|e| comp.contains(&e.a.vertex))
                .count() as i64;
            let mut legs: Vec<u32> = y
                .legs
                .iter()
                .filter(|l| comp.contains(&l.vertex))
                .map(|l| l.label)
                .collect();
            legs.sort_unstable();
            (gv + e - comp.len() as i64 + 1, legs)
        })
        .collect();
    key.sort();
    key
}

/// Boundary divisor of `M̄_{0,n}` separating `a` from `b`.
pub fn boundary_divisor(a: &[u32], b: &[u32]) -> DualGraph {
    let mut x = DualGraph::with_vertices(&[0, 0]).edge(0, 1);
    x.legs.extend(a.iter().map(|&label| Leg {
        label,
        vertex: 0,
        psi: 0,
    }));
    x.legs.extend(b.iter().map(|&label| Leg {
        label,
        vertex: 1,
        psi: 0,
    }));
    x
}

/// The pullback of `D(12|34) - D(13|24)` from `M̄_{0,4}` to `M̄_{0,5}`:
/// `D(12|345) + D(125|34) - D(13|245) - D(135|24)`.
pub fn cross_ratio_relation_m05() -> GraphSum {
    let mut s = GraphSum::new(0, 5);
    let terms: [(&[u32], &[u32], i64); 4] = [
        (&[1, 2], &[3, 4, 5], 1),
        (&[1, 2, 5], &[3, 4], 1),
        (&[1, 3], &[2, 4, 5], -1),
        (&[1, 3, 5], &[2, 4], -1),
    ];
    for (a, b, c) in terms {
        s.add_graph(&boundary_divisor(a, b), int(c))
            .expect("well-formed");
    }
    s
}

#[derive(Serialize, Deserialize)]
struct Term {
    graph: DualGraph,
    #[serde(with = "crate::exact::ratstr")]
    coeff: BigRational,
}

#[derive(Serialize, Deserialize)]
struct Component {
    genus: i64,
    legs: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct Point {
    components: Vec<Component>,
    #[serde(with = "crate::exact::ratstr")]
    coeff: BigRational,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    g: i64,
    n: u32,
    terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    points: Vec<Point>,
}

impl TryFrom<Repr> for GraphSum {
    type Error = TautError;

    fn try_from(r: Repr) -> Result<Self> {
        let mut s = GraphSum::new(r.g, r.n);
        for t in r.terms {
            s.add_graph(&t.graph, t.coeff)?;
        }
        for p in r.points {
            s.add_point(
                p.components
                    .into_iter()
                    .map(|c| (c.genus, c.legs))
                    .collect(),
                p.coeff,
            )?;
        }
        Ok(s)
    }
}

impl From<GraphSum> for Repr {
    fn from(s: GraphSum) -> Self {
        Repr {
            g: s.g,
            n: s.n,
            terms: s
                .terms
                .into_iter()
                .map(|(graph, coeff)| Term { graph, coeff })
                .collect(),
            points: s
                .points
                .into_iter()
                .map(|(key, coeff)| Point {
                    components: key
                        .into_iter()
                        .map(|(genus, legs)| Component { genus, legs })
                        .collect(),
                    coeff,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(x: &DualGraph) -> GraphSum {
        let mut s = GraphSum::new(x.genus(), x.n() as u32);
        s.add_graph(x, int(1)).unwrap();
        s
    }

    #[test]
    fn relation_shape() {
        let r = cross_ratio_relation_m05();
        assert_eq!(r.terms().len(), 4);
        let mut coeffs: Vec<BigRational> = r.terms().values().cloned().collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![int(-1), int(-1), int(1), int(1)]);
    }

    #[test]
    fn relation_is_annihilated() {
        let out = rl_apply(&cross_ratio_relation_m05(), 1).unwrap();
        assert!(out.is_zero(), "{out:?}");
        assert_eq!((out.genus(), out.n()), (-1, 7));
    }

    #[test]
    fn relation_relabelled_is_annihilated() {
        let r = cross_ratio_relation_m05().swap_legs(1, 2);
        assert_eq!(r.terms().len(), 4);
        assert!(rl_apply(&r, 1).unwrap().is_zero());
    }

    #[test]
    fn single_divisor_is_not_annihilated() {
        let s = single(&boundary_divisor(&[1, 2], &[3, 4, 5]));
        assert!(!rl_apply(&s, 1).unwrap().is_zero());
    }

    #[test]
    fn smooth_m04_hand_expansion() {
        // only vertex splitting into two tripods contributes, each with -1
        let out = rl_apply(&single(&DualGraph::smooth(0, 4)), 1).unwrap();
        assert!(out.terms().is_empty());
        let mut expected = BTreeMap::new();
        for (a, b) in [([1, 2], [3, 4]), ([1, 3], [2, 4]), ([1, 4], [2, 3])] {
            for (x, y) in [(a, b), (b, a)] {
                let key = vec![(0, vec![x[0], x[1], 5]), (0, vec![y[0], y[1], 6])];
                let mut key = key;
                key.sort();
                expected.insert(key, int(-1));
            }
        }
        assert_eq!(out.points(), &expected);
    }

    #[test]
    fn boundary_point_of_m04_goes_to_zero() {
        let out = rl_apply(&single(&boundary_divisor(&[1, 2], &[3, 4])), 1).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn smooth_m11_hand_expansion() {
        let out = rl_apply(&single(&DualGraph::smooth(1, 1)), 1).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(vec![(0, vec![1, 2, 3])], int(-1));
        assert_eq!(out.points(), &expected);
        assert!(out.terms().is_empty());
    }

    #[test]
    fn kappa_rejected() {
        let mut x = DualGraph::smooth(1, 2);
        x.vertices[0].kappa.push(1);
        let mut s = GraphSum::new(1, 2);
        s.add_graph(&x, int(1)).unwrap();
        assert!(matches!(
            rl_apply(&s, 1),
            Err(TautError::UnsupportedDecoration(_))
        ));
        assert!(rl_apply(&s, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = cross_ratio_relation_m05();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"coeff\":\"-1\""));
        let back: GraphSum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let pts = rl_apply(&single(&DualGraph::smooth(0, 4)), 1).unwrap();
        let back: GraphSum = serde_json::from_str(&serde_json::to_string(&pts).unwrap()).unwrap();
        assert_eq!(back, pts);
    }

    #[test]
    fn rejects_mismatched_graphs() {
        let mut s = GraphSum::new(0, 5);
        assert!(s.add_graph(&DualGraph::smooth(0, 4), int(1)).is_err());
        assert!(s.add_graph(&DualGraph::smooth(1, 5), int(1)).is_err());
    }
}
