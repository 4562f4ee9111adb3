//! Stable dual graphs of nodal curves, possibly disconnected, with ψ-powers
//! on half-edges.
//!
//! A vertex is a component with its genus, an edge a node (loops allowed), a
//! leg a marked point. The arithmetic genus of the curve is
//! `Σ g_v + E - V + 1`, which for a disjoint union is `Σ (g_c - 1) + 1`.

mod canon;
mod enumerate;

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub use canon::{is_isomorphic, GraphClass};
pub use enumerate::{enumerate_stable, enumerate_stable_with, EnumerateOptions};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub genus: u32,
    /// κ-class indices decorating the vertex; carried but not computed with.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kappa: Vec<u32>,
}

impl Vertex {
    pub fn new(genus: u32) -> Self {
        Vertex {
            genus,
            kappa: Vec::new(),
        }
    }
}

/// One end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub vertex: usize,
    #[serde(default)]
    pub psi: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: HalfEdge,
    pub b: HalfEdge,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a.vertex == self.b.vertex
    }

    fn normalized(mut self) -> Self {
        if self.b < self.a {
            std::mem::swap(&mut self.a, &mut self.b);
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Leg {
    pub label: u32,
    pub vertex: usize,
    #[serde(default)]
    pub psi: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub legs: Vec<Leg>,
}

impl DualGraph {
    /// Vertices of the given genera, no edges or legs.
    pub fn with_vertices(genera: &[u32]) -> Self {
        DualGraph {
            vertices: genera.iter().map(|&g| Vertex::new(g)).collect(),
            ..Default::default()
        }
    }

    /// A single vertex of genus `g` carrying legs `1..=n`.
    pub fn smooth(g: u32, n: u32) -> Self {
        let mut s = Self::with_vertices(&[g]);
        for label in 1..=n {
            s = s.leg(label, 0);
        }
        s
    }

    pub fn edge(self, u: usize, v: usize) -> Self {
        self.psi_edge(u, 0, v, 0)
    }

    pub fn psi_edge(mut self, u: usize, pu: u32, v: usize, pv: u32) -> Self {
        self.edges.push(Edge {
            a: HalfEdge { vertex: u, psi: pu },
            b: HalfEdge { vertex: v, psi: pv },
        });
        self
    }

    pub fn leg(self, label: u32, v: usize) -> Self {
        self.psi_leg(label, v, 0)
    }

    pub fn psi_leg(mut self, label: u32, v: usize, psi: u32) -> Self {
        self.legs.push(Leg {
            label,
            vertex: v,
            psi,
        });
        self
    }

    /// Checks vertex references and that leg labels are distinct.
    pub fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        for e in &self.edges {
            if e.a.vertex >= nv || e.b.vertex >= nv {
                return domain(format!("edge {e:?} refers to a missing vertex"));
            }
        }
        let mut labels: Vec<u32> = self.legs.iter().map(|l| l.label).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return domain("leg labels must be distinct");
        }
        if let Some(l) = self.legs.iter().find(|l| l.vertex >= nv) {
            return domain(format!("leg {} refers to a missing vertex", l.label));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn leg_labels(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.legs.iter().map(|l| l.label).collect();
        v.sort_unstable();
        v
    }

    /// `Σ g_v + E - V + 1`.
    pub fn genus(&self) -> i64 {
        let gv: i64 = self.vertices.iter().map(|v| v.genus as i64).sum();
        gv + self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    /// Legs plus edge ends at `v`; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.legs.iter().filter(|l| l.vertex == v).count()
            + self
                .edges
                .iter()
                .map(|e| (e.a.vertex == v) as usize + (e.b.vertex == v) as usize)
                .sum::<usize>()
    }

    /// Genus-0 vertices have valence at least 3, genus-1 vertices at least 1.
    pub fn is_stable(&self) -> bool {
        !self.vertices.is_empty()
            && (0..self.vertices.len())
                .all(|v| 2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64 > 0)
    }

    /// Number of edges.
    pub fn codim(&self) -> usize {
        self.edges.len()
    }

    /// Dimension `3g - 3 + n - E` of the stratum.
    pub fn dimension(&self) -> i64 {
        3 * self.genus() - 3 + self.n() as i64 - self.codim() as i64
    }

    /// Total ψ-degree over all half-edges.
    pub fn psi_degree(&self) -> u32 {
        self.legs.iter().map(|l| l.psi).sum::<u32>()
            + self.edges.iter().map(|e| e.a.psi + e.b.psi).sum::<u32>()
    }

    /// Dimension of the decorated class.
    pub fn class_dimension(&self) -> i64 {
        self.dimension() - self.psi_degree() as i64
    }

    /// ψ-exponents of the half-edges at `v`.
    pub fn vertex_psi(&self, v: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .legs
            .iter()
            .filter(|l| l.vertex == v)
            .map(|l| l.psi)
            .collect();
        for e in &self.edges {
            for h in [e.a, e.b] {
                if h.vertex == v {
                    out.push(h.psi);
                }
            }
        }
        out
    }

    pub fn has_kappa(&self) -> bool {
        self.vertices.iter().any(|v| !v.kappa.is_empty())
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let nv = self.vertices.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.a.vertex), find(&mut parent, e.b.vertex));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; nv];
        for v in 0..nv {
            let r = find(&mut parent, v);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index[r]].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; vertex indices of `other` are shifted.
    pub fn disjoint_union(&self, other: &DualGraph) -> DualGraph {
        let shift = self.vertices.len();
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().cloned());
        out.edges.extend(other.edges.iter().map(|e| Edge {
            a: HalfEdge {
                vertex: e.a.vertex + shift,
                ..e.a
            },
            b: HalfEdge {
                vertex: e.b.vertex + shift,
                ..e.b
            },
        }));
        out.legs.extend(other.legs.iter().map(|l| Leg {
            vertex: l.vertex + shift,
            ..*l
        }));
        out
    }

    /// Graphviz rendering: vertices labelled `g=<genus>`, legs as plain-text
    /// nodes, nonzero ψ-powers as edge-end labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [shape=circle, label=\"g={}\"];", v.genus);
        }
        let mut legs = self.legs.clone();
        legs.sort();
        for l in &legs {
            let _ = writeln!(s, "  leg{0} [shape=plaintext, label=\"{0}\"];", l.label);
            let _ = write!(s, "  v{} -- leg{}", l.vertex, l.label);
            if l.psi > 0 {
                let _ = write!(s, " [taillabel=\"psi^{}\"]", l.psi);
            }
            let _ = writeln!(s, ";");
        }
        for e in &self.edges {
            let _ = write!(s, "  v{} -- v{}", e.a.vertex, e.b.vertex);
            let mut attrs = Vec::new();
            if e.a.psi > 0 {
                attrs.push(format!("taillabel=\"psi^{}\"", e.a.psi));
            }
            if e.b.psi > 0 {
                attrs.push(format!("headlabel=\"psi^{}\"", e.b.psi));
            }
            if !attrs.is_empty() {
                let _ = write!(s, " [{}]", attrs.join(", "));
            }
            let _ = writeln!(s, ";");
        }
        s.push_str("}\n");
        s
    }
}

/// Compact form: each vertex as `genus{legs}`, then the edges as vertex
/// pairs; a ψ-power `p` on a half-edge is written `^p`. For example
/// `0{1,2^1} 1{}; 0-1 1-1`.
impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |label: String, psi: u32| {
            if psi > 0 {
                format!("{label}^{psi}")
            } else {
                label
            }
        };
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let mut legs: Vec<&Leg> = self.legs.iter().filter(|l| l.vertex == i).collect();
            legs.sort();
            let legs: Vec<String> = legs
                .iter()
                .map(|l| half(l.label.to_string(), l.psi))
                .collect();
            write!(f, "{}", v.genus)?;
            for k in &v.kappa {
                write!(f, "k{k}")?;
            }
            write!(f, "{{{}}}", legs.join(","))?;
        }
        if !self.edges.is_empty() {
            let edges: Vec<String> = self
                .edges
                .iter()
                .map(|e| {
                    format!(
                        "{}-{}",
                        half(e.a.vertex.to_string(), e.a.psi),
                        half(e.b.vertex.to_string(), e.b.psi)
                    )
                })
                .collect();
            write!(f, "; {}", edges.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(DualGraph::with_vertices(&[1]).edge(0, 0).genus(), 2);
        assert_eq!(DualGraph::smooth(4, 0).genus(), 4);
        let two = DualGraph::with_vertices(&[0, 0])
            .leg(1, 0)
            .leg(2, 0)
            .leg(3, 0)
            .leg(4, 1)
            .leg(5, 1)
            .leg(6, 1);
        assert_eq!(two.genus(), -1);
        assert_eq!(two.components().len(), 2);
        assert!(two.is_stable());
    }

    #[test]
    fn stability_examples() {
        assert!(DualGraph::smooth(0, 3).is_stable());
        assert!(!DualGraph::smooth(1, 0).is_stable());
        assert!(DualGraph::with_vertices(&[0])
            .edge(0, 0)
            .leg(1, 0)
            .is_stable());
        assert!(!DualGraph::smooth(0, 2).is_stable());
        assert!(DualGraph::smooth(2, 0).is_stable());
    }

    #[test]
    fn codim_examples() {
        assert_eq!(DualGraph::smooth(2, 2).codim(), 0);
        // a loop on a genus-0 vertex joined to a genus-1 vertex with both legs
        let g = DualGraph::with_vertices(&[0, 1])
            .edge(0, 0)
            .edge(0, 1)
            .leg(1, 1)
            .leg(2, 1);
        assert_eq!(g.genus(), 2);
        assert_eq!(g.codim(), 2);
        assert_eq!(g.dimension(), 3 * 2 - 3 + 2 - 2);
    }

    #[test]
    fn validation() {
        assert!(DualGraph::smooth(0, 3).validate().is_ok());
        assert!(DualGraph::smooth(0, 3).leg(1, 0).validate().is_err());
        assert!(DualGraph::with_vertices(&[0])
            .edge(0, 1)
            .validate()
            .is_err());
    }

    #[test]
    fn dot_output() {
        let g = DualGraph::with_vertices(&[1]).edge(0, 0).psi_leg(1, 0, 2);
        let dot = g.to_dot("G");
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("v0 [shape=circle, label=\"g=1\"];"));
        assert!(dot.contains("v0 -- leg1 [taillabel=\"psi^2\"];"));
        assert!(dot.contains("v0 -- v0;"));
    }

    #[test]
    fn display() {
        let g = DualGraph::with_vertices(&[0, 1])
            .psi_edge(0, 1, 1, 0)
            .leg(2, 0)
            .psi_leg(1, 0, 2);
        assert_eq!(g.to_string(), "0{1^2,2} 1{}; 0^1-1");
    }
}
