//! Exact factor searches, rainbow verification and the Kelmans pull-back.

pub mod kfactor;
pub mod matching;
pub mod pullback;
pub mod rainbow;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use kfactor::find_k_factor;
pub use pullback::{pull_back, pull_back_chain, rainbow_via_kelmans, KelmansRoute};
pub use rainbow::{find_rainbow_hamiltonian_cycle, find_rainbow_k_factor, find_rainbow_perfect_matching};

use crate::graph::{Edge, GraphCollection, LabeledGraph};

/// Node budget used when the caller does not pick one.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_cap: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_cap: Some(DEFAULT_NODE_CAP),
        }
    }
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits { node_cap: None }
    }

    pub fn capped(nodes: u64) -> Self {
        SearchLimits { node_cap: Some(nodes) }
    }
}

/// Result of a capped exact search. `Unknown` means the budget ran out
/// before the search space was exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SearchOutcome::Unknown)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::Unknown => SearchOutcome::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub edge: Edge,
    /// 1-based index into the collection.
    pub color: usize,
}

/// Edges of a k-factor, each tagged with the collection member it is taken from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowFactor {
    pub k: usize,
    pub assignments: Vec<Assignment>,
}

impl RainbowFactor {
    /// Sorts the assignments by colour.
    pub fn new(k: usize, mut assignments: Vec<Assignment>) -> Self {
        assignments.sort_by_key(|a| (a.color, a.edge));
        RainbowFactor { k, assignments }
    }

    pub fn graph(&self, n: usize) -> Result<LabeledGraph, crate::error::GraphError> {
        let mut g = LabeledGraph::try_empty(n)?;
        for a in &self.assignments {
            g.add_edge(a.edge.lo(), a.edge.hi())?;
        }
        Ok(g)
    }

    pub fn edge_of(&self, color: usize) -> Option<Edge> {
        self.assignments.iter().find(|a| a.color == color).map(|a| a.edge)
    }
}

/// The first constraint a factor breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Size { found: usize, expected: usize },
    ColorOutOfRange(usize),
    ColorReused(usize),
    EdgeRepeated(Edge),
    Degree { vertex: usize, degree: usize, k: usize },
    Membership { edge: Edge, color: usize },
    Graph(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Size { found, expected } => {
                write!(f, "wrong size: {found} assignments, expected {expected}")
            }
            Violation::ColorOutOfRange(c) => write!(f, "color {c} out of range"),
            Violation::ColorReused(c) => write!(f, "color reused: {c}"),
            Violation::EdgeRepeated(e) => write!(f, "edge repeated: {e}"),
            Violation::Degree { vertex, degree, k } => {
                write!(f, "not {k}-regular: vertex {vertex} has degree {degree}")
            }
            Violation::Membership { edge, color } => {
                write!(f, "membership violated: {edge} is not in graph {color}")
            }
            Violation::Graph(msg) => write!(f, "invalid edge: {msg}"),
        }
    }
}

impl std::error::Error for Violation {}

/// Checks k-regularity, the colour bijection and membership, in that order.
pub fn verify_rainbow(f: &RainbowFactor, gc: &GraphCollection) -> Result<(), Violation> {
    let (n, k, m) = (gc.n(), f.k, gc.len());
    if f.assignments.len() != m || k * n != 2 * m {
        return Err(Violation::Size {
            found: f.assignments.len(),
            expected: m,
        });
    }
    let mut used = vec![false; m + 1];
    for a in &f.assignments {
        if a.color == 0 || a.color > m {
            return Err(Violation::ColorOutOfRange(a.color));
        }
        if std::mem::replace(&mut used[a.color], true) {
            return Err(Violation::ColorReused(a.color));
        }
    }
    let mut g = LabeledGraph::empty(n);
    for a in &f.assignments {
        if a.edge.hi() > n {
            return Err(Violation::Graph(format!("{} has a vertex outside 1..={n}", a.edge)));
        }
        if g.contains_edge(a.edge) {
            return Err(Violation::EdgeRepeated(a.edge));
        }
        g.add_edge(a.edge.lo(), a.edge.hi()).expect("in range");
    }
    if let Some(v) = (1..=n).find(|&v| g.degree(v) != k) {
        return Err(Violation::Degree {
            vertex: v,
            degree: g.degree(v),
            k,
        });
    }
    if let Some(a) = f.assignments.iter().find(|a| !gc.contains(a.color, a.edge)) {
        return Err(Violation::Membership {
            edge: a.edge,
            color: a.color,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn asg(a: usize, b: usize, color: usize) -> Assignment {
        Assignment {
            edge: Edge::new(a, b),
            color,
        }
    }

    #[test]
    fn verifier_diagnostics() {
        let gc = GraphCollection::new(1, vec![complete(4), LabeledGraph::from_edges(4, [(1, 2)]).unwrap()]).unwrap();
        let good = RainbowFactor::new(1, vec![asg(1, 2, 2), asg(3, 4, 1)]);
        assert_eq!(verify_rainbow(&good, &gc), Ok(()));
        let reused = RainbowFactor::new(1, vec![asg(1, 2, 1), asg(3, 4, 1)]);
        assert!(verify_rainbow(&reused, &gc)
            .unwrap_err()
            .to_string()
            .contains("color reused"));
        let absent = RainbowFactor::new(1, vec![asg(1, 2, 1), asg(3, 4, 2)]);
        assert!(verify_rainbow(&absent, &gc)
            .unwrap_err()
            .to_string()
            .contains("membership violated"));
        let irregular = RainbowFactor::new(1, vec![asg(1, 2, 2), asg(1, 3, 1)]);
        assert!(matches!(verify_rainbow(&irregular, &gc), Err(Violation::Degree { .. })));
        let short = RainbowFactor::new(1, vec![asg(1, 2, 2)]);
        assert!(matches!(verify_rainbow(&short, &gc), Err(Violation::Size { .. })));
    }

    #[test]
    fn factor_json() {
        let f = RainbowFactor::new(1, vec![asg(1, 2, 1)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"k":1,"assignments":[{"edge":[1,2],"color":1}]}"#);
        assert_eq!(serde_json::from_str::<RainbowFactor>(&s).unwrap(), f);
    }
}
