use super::{Edge, LabeledGraph};
use crate::error::{FactorError, GraphError};

/// An ordered family of graphs on a shared vertex set, indexed `1..=m`,
/// together with the target degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCollection {
    k: usize,
    graphs: Vec<LabeledGraph>,
}

impl GraphCollection {
    pub fn new(k: usize, graphs: Vec<LabeledGraph>) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::Parameters("k must be positive".into()));
        }
        let first = graphs
            .first()
            .ok_or_else(|| GraphError::Parameters("collection is empty".into()))?;
        if let Some(g) = graphs.iter().find(|g| g.n() != first.n()) {
            return Err(GraphError::SizeMismatch(first.n(), g.n()));
        }
        Ok(GraphCollection { k, graphs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graphs[0].n()
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[LabeledGraph] {
        &self.graphs
    }

    /// Member with 1-based index `color`.
    pub fn member(&self, color: usize) -> &LabeledGraph {
        &self.graphs[color - 1]
    }

    pub fn contains(&self, color: usize, e: Edge) -> bool {
        color >= 1 && color <= self.graphs.len() && self.graphs[color - 1].contains_edge(e)
    }

    /// Checks `k*n` even and `m = k*n/2`.
    pub fn check_factor_size(&self) -> Result<(), FactorError> {
        let (k, n) = (self.k, self.n());
        if k * n % 2 == 1 {
            return Err(FactorError::OddDegreeSum { k, n });
        }
        if self.len() != k * n / 2 {
            return Err(FactorError::CollectionSize {
                found: self.len(),
                expected: k * n / 2,
            });
        }
        Ok(())
    }

    /// Union of all members.
    pub fn union_graph(&self) -> LabeledGraph {
        let mut u = self.graphs[0].clone();
        for g in &self.graphs[1..] {
            for (row, extra) in u.rows.iter_mut().zip(&g.rows) {
                *row |= extra;
            }
        }
        u
    }

    pub fn all_identical(&self) -> bool {
        self.graphs.windows(2).all(|w| w[0] == w[1])
    }

    pub fn map<F>(&self, f: F) -> GraphCollection
    where
        F: FnMut(&LabeledGraph) -> LabeledGraph,
    {
        GraphCollection {
            k: self.k,
            graphs: self.graphs.iter().map(f).collect(),
        }
    }

    pub fn with_k(&self, k: usize) -> GraphCollection {
        GraphCollection {
            k,
            graphs: self.graphs.clone(),
        }
    }

    /// Sub-collection made of the given 1-based member indices, in order.
    pub fn select(&self, colors: &[usize], k: usize) -> GraphCollection {
        GraphCollection {
            k,
            graphs: colors.iter().map(|&c| self.graphs[c - 1].clone()).collect(),
        }
    }
}
