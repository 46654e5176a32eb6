//! Labeled simple graphs on the vertex set `{1, ..., n}`.
//!
//! Vertex labels carry meaning (the Kelmans closure and the explicit
//! schedules both depend on the label order), so nothing in this module
//! ever permutes them. Storage is a row of `u64` bitmasks per vertex, which
//! caps the order at [`MAX_VERTICES`].

pub mod collection;
pub mod families;
pub mod io;
pub mod iso;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub use collection::GraphCollection;
pub use families::{complete, cycle, hnk, lemma_family, lemma_family_parts, path, star};
pub use io::{emit_collection, emit_graph, parse_collection, parse_graph, GraphFormat};
pub use iso::is_isomorphic;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// An undirected edge `{a, b}` with `a < b`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "loop {a}-{a} is not an edge");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(self, v: usize) -> Option<usize> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = GraphError;

    fn try_from([a, b]: [usize; 2]) -> Result<Self, Self::Error> {
        if a == b {
            return Err(GraphError::Loop(a));
        }
        Ok(Edge::new(a, b))
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// A simple graph on `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    // rows[i] has bit j set iff {i+1, j+1} is an edge
    rows: Vec<u64>,
}

impl LabeledGraph {
    /// Edgeless graph on `n` vertices. Panics unless `1 <= n <= MAX_VERTICES`.
    pub fn empty(n: usize) -> Self {
        Self::try_empty(n).expect("vertex count out of range")
    }

    pub fn try_empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(LabeledGraph { n, rows: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::try_empty(n)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::Loop(a));
        }
        self.rows[a - 1] |= 1 << (b - 1);
        self.rows[b - 1] |= 1 << (a - 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        self.rows[a - 1] &= !(1 << (b - 1));
        self.rows[b - 1] &= !(1 << (a - 1));
        Ok(())
    }

    /// False for out-of-range endpoints.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return false;
        }
        self.rows[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v - 1].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    /// Neighbours of `v` in ascending label order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.rows[v - 1]).map(|i| i + 1)
    }

    /// Neighbourhood of `v` as a bitmask over 0-based indices.
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.rows[v - 1]
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 1..=self.n {
            for b in bits(self.rows[a - 1].checked_shr(a as u32).unwrap_or(0)) {
                out.push(Edge(a, a + b + 1));
            }
        }
        out
    }

    /// True if every edge of `self` is an edge of `other` (same `n`).
    pub fn is_subgraph_of(&self, other: &LabeledGraph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Connected components, each sorted, found by breadth-first search
    /// started from the smallest unvisited label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for i in bits(frontier) {
                    next |= self.rows[i];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).map(|i| i + 1).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced on `vertices`, relabeled to `1..=len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> LabeledGraph {
        let mut g = LabeledGraph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
            }
        }
        g
    }

    /// Image under the relabeling `v -> perm[v-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<LabeledGraph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::SizeMismatch(perm.len(), self.n));
        }
        let mut g = LabeledGraph::empty(self.n);
        for e in self.edges() {
            g.add_edge(perm[e.0 - 1], perm[e.1 - 1])?;
        }
        Ok(g)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| (self.rows[i] >> j & 1) as i64).collect())
            .collect()
    }

    /// Checks symmetry and the zero diagonal. Every constructor maintains
    /// these; the check exists for tests and for freshly parsed input.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|i| {
            self.rows[i] >> i & 1 == 0
                && self.rows[i].checked_shr(self.n as u32).unwrap_or(0) == 0
                && bits(self.rows[i]).all(|j| self.rows[j] >> i & 1 == 1)
        })
    }
}

/// Exact equality of vertex sets and edge sets.
pub fn is_identical(g: &LabeledGraph, h: &LabeledGraph) -> bool {
    g == h
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// A graph whose edges live inside a designated vertex subset of a common
/// ground set. Joins and unions are defined on these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedGraph {
    support: u64,
    graph: LabeledGraph,
}

impl PlacedGraph {
    pub fn new(graph: LabeledGraph, vertices: &[usize]) -> Result<Self, GraphError> {
        let support = mask_of(graph.n, vertices)?;
        for e in graph.edges() {
            if support >> (e.0 - 1) & 1 == 0 || support >> (e.1 - 1) & 1 == 0 {
                return Err(GraphError::EdgeOutsideSupport(e.0, e.1));
            }
        }
        Ok(PlacedGraph { support, graph })
    }

    pub fn empty_on(n: usize, vertices: &[usize]) -> Result<Self, GraphError> {
        Self::new(LabeledGraph::try_empty(n)?, vertices)
    }

    pub fn complete_on(n: usize, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut g = LabeledGraph::try_empty(n)?;
        let support = mask_of(n, vertices)?;
        for i in bits(support) {
            g.rows[i] = support & !(1 << i);
        }
        Ok(PlacedGraph { support, graph: g })
    }

    pub fn vertices(&self) -> Vec<usize> {
        bits(self.support).map(|i| i + 1).collect()
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    fn combine(&self, other: &PlacedGraph, connect: bool) -> Result<PlacedGraph, GraphError> {
        if self.graph.n != other.graph.n {
            return Err(GraphError::SizeMismatch(self.graph.n, other.graph.n));
        }
        let overlap = self.support & other.support;
        if overlap != 0 {
            return Err(GraphError::Overlap(overlap.trailing_zeros() as usize + 1));
        }
        let mut g = self.graph.clone();
        for (row, extra) in g.rows.iter_mut().zip(&other.graph.rows) {
            *row |= extra;
        }
        if connect {
            for i in bits(self.support) {
                g.rows[i] |= other.support;
            }
            for j in bits(other.support) {
                g.rows[j] |= self.support;
            }
        }
        Ok(PlacedGraph {
            support: self.support | other.support,
            graph: g,
        })
    }

    /// `self ∨ other`: both edge sets plus every pair across the two supports.
    pub fn join(&self, other: &PlacedGraph) -> Result<PlacedGraph, GraphError> {
        self.combine(other, true)
    }

    /// Disjoint union.
    pub fn union(&self, other: &PlacedGraph) -> Result<PlacedGraph, GraphError> {
        self.combine(other, false)
    }
}

/// Join of two graphs placed on disjoint vertex subsets of a common ground set.
pub fn join(g: &PlacedGraph, h: &PlacedGraph) -> Result<PlacedGraph, GraphError> {
    g.join(h)
}

fn mask_of(n: usize, vertices: &[usize]) -> Result<u64, GraphError> {
    let mut m = 0u64;
    for &v in vertices {
        if v == 0 || v > n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        m |= 1 << (v - 1);
    }
    Ok(m)
}

/// Iterates the set bit positions of `word`, lowest first.
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}
