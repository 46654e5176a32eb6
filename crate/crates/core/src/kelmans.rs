//! The Kelmans operation: `KO_uv` replaces every edge `vw` with
//! `w ∉ N(u) ∪ {u}` by `uw`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::GraphError;
use crate::exec::Exec;
use crate::graph::{bits, Edge, GraphCollection, LabeledGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KelmansTrace {
    pub source: LabeledGraph,
    pub pair: (usize, usize),
    /// The deleted edges `{v, w}`; each was replaced by `{u, w}`.
    pub moved: Vec<Edge>,
    pub result: LabeledGraph,
}

impl Serialize for KelmansTrace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("KelmansTrace", 4)?;
        st.serialize_field("pair", &[self.pair.0, self.pair.1])?;
        st.serialize_field("moved", &self.moved)?;
        st.serialize_field("before", &self.source.edges())?;
        st.serialize_field("after", &self.result.edges())?;
        st.end()
    }
}

/// Vertices `w` whose edge `vw` moves under `KO_uv`, as a 0-based bitmask.
fn moving(g: &LabeledGraph, u: usize, v: usize) -> u64 {
    g.row(v) & !g.row(u) & !(1u64 << (u - 1))
}

/// Applies `KO_uv` in place; returns whether anything moved.
fn apply(g: &mut LabeledGraph, u: usize, v: usize) -> bool {
    let mask = moving(g, u, v);
    for w in bits(mask) {
        g.remove_edge(v, w + 1).expect("edge present");
        g.add_edge(u, w + 1).expect("in range");
    }
    mask != 0
}

fn check_pair(g: &LabeledGraph, u: usize, v: usize) -> Result<(), GraphError> {
    for x in [u, v] {
        if x == 0 || x > g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    if u == v {
        return Err(GraphError::Parameters(format!("Kelmans pair needs u != v, got {u}")));
    }
    Ok(())
}

pub fn ko_pair(g: &LabeledGraph, u: usize, v: usize) -> Result<KelmansTrace, GraphError> {
    check_pair(g, u, v)?;
    let moved = bits(moving(g, u, v)).map(|w| Edge::new(v, w + 1)).collect();
    let mut result = g.clone();
    apply(&mut result, u, v);
    Ok(KelmansTrace {
        source: g.clone(),
        pair: (u, v),
        moved,
        result,
    })
}

/// Sweeps all pairs `u < v` lexicographically, applying `KO_uv`, until a
/// whole sweep changes nothing.
pub fn ko_full(g: &LabeledGraph) -> LabeledGraph {
    let mut h = g.clone();
    let n = h.n();
    loop {
        let mut changed = false;
        for u in 1..=n {
            for v in u + 1..=n {
                changed |= apply(&mut h, u, v);
            }
        }
        if !changed {
            return h;
        }
    }
}

/// For every edge `xy` with `x < y`, every pair `ij` with `i <= x` and
/// `i < j <= y` is an edge.
pub fn is_shift_stable(g: &LabeledGraph) -> bool {
    g.edges().into_iter().all(|e| {
        let (x, y) = (e.lo(), e.hi());
        (1..=x).all(|i| (i + 1..=y).all(|j| g.has_edge(i, j)))
    })
}

/// Member-wise [`ko_full`].
pub fn ko_collection(gc: &GraphCollection) -> GraphCollection {
    ko_collection_with(gc, Exec::default())
}

pub fn ko_collection_with(gc: &GraphCollection, exec: Exec) -> GraphCollection {
    let graphs = exec.map(gc.graphs(), ko_full);
    GraphCollection::new(gc.k(), graphs).expect("shape preserved")
}

/// One collection-wide application of `KO_uv` that changed some member.
#[derive(Clone, Debug)]
pub struct KelmansStep {
    pub pair: (usize, usize),
    /// The collection just before the step.
    pub before: GraphCollection,
}

/// Runs the sweep of [`ko_full`] on all members at once, recording every
/// pair that changed at least one member. The final collection equals
/// [`ko_collection`]: a member already at its fixed point is unaffected by
/// further sweeps.
pub fn ko_collection_steps(gc: &GraphCollection) -> (GraphCollection, Vec<KelmansStep>) {
    let n = gc.n();
    let mut cur = gc.clone();
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for u in 1..=n {
            for v in u + 1..=n {
                if cur.graphs().iter().all(|g| moving(g, u, v) == 0) {
                    continue;
                }
                let next = cur.map(|g| {
                    let mut h = g.clone();
                    apply(&mut h, u, v);
                    h
                });
                steps.push(KelmansStep {
                    pair: (u, v),
                    before: std::mem::replace(&mut cur, next),
                });
                changed = true;
            }
        }
        if !changed {
            return (cur, steps);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn complete_is_fixed() {
        let t = ko_pair(&complete(5), 2, 4).unwrap();
        assert!(t.moved.is_empty());
        assert_eq!(t.result, complete(5));
        assert_eq!(ko_full(&complete(6)), complete(6));
        assert!(is_shift_stable(&complete(6)));
    }

    #[test]
    fn paths() {
        let t = ko_pair(&path(3), 1, 3).unwrap();
        assert_eq!(t.result, path(3));
        let t = ko_pair(&path(4), 1, 4).unwrap();
        assert_eq!(t.moved, vec![Edge::new(3, 4)]);
        assert_eq!(t.result, LabeledGraph::from_edges(4, [(1, 2), (2, 3), (1, 3)]).unwrap());
        assert_eq!(t.result.degree(4), 0);
    }

    #[test]
    fn edge_uv_is_untouched() {
        let g = LabeledGraph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let t = ko_pair(&g, 1, 2).unwrap();
        assert_eq!(t.moved, vec![Edge::new(2, 3)]);
        assert!(t.result.has_edge(1, 2) && t.result.has_edge(1, 3));
    }

    #[test]
    fn matching_collapses_to_star() {
        let m = LabeledGraph::from_edges(4, [(1, 3), (2, 4)]).unwrap();
        let f = ko_full(&m);
        assert_eq!(f, LabeledGraph::from_edges(4, [(1, 2), (1, 3)]).unwrap());
        assert!(is_shift_stable(&f));
    }

    #[test]
    fn shift_stability() {
        assert!(!is_shift_stable(&LabeledGraph::from_edges(3, [(2, 3)]).unwrap()));
        assert!(is_shift_stable(&LabeledGraph::from_edges(3, [(1, 2), (1, 3)]).unwrap()));
        assert!(!is_shift_stable(&path(4)));
    }

    #[test]
    fn errors() {
        assert!(ko_pair(&path(3), 2, 2).is_err());
        assert!(ko_pair(&path(3), 0, 2).is_err());
        assert!(ko_pair(&path(3), 1, 4).is_err());
    }

    #[test]
    fn trace_json() {
        let t = ko_pair(&path(4), 1, 4).unwrap();
        let j = serde_json::to_value(&t).unwrap();
        assert_eq!(j["pair"], serde_json::json!([1, 4]));
        assert_eq!(j["moved"], serde_json::json!([[3, 4]]));
        assert_eq!(j["after"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn collection_steps_match_memberwise() {
        let gc = GraphCollection::new(
            1,
            vec![
                path(6),
                LabeledGraph::from_edges(6, [(1, 6), (2, 5), (3, 4)]).unwrap(),
                complete(6),
            ],
        )
        .unwrap();
        let (end, steps) = ko_collection_steps(&gc);
        assert_eq!(end, ko_collection(&gc));
        assert_eq!(end, ko_collection_with(&gc, Exec::Sequential));
        assert_eq!(end.member(3), &complete(6));
        assert!(!steps.is_empty());
        assert_eq!(steps[0].before, gc);
        for w in steps.windows(2) {
            let (u, v) = w[0].pair;
            let replay = w[0].before.map(|g| ko_pair(g, u, v).unwrap().result);
            assert_eq!(replay, w[1].before);
        }
    }
}
