//! Constructors for the graph families used throughout the crate.

use super::{LabeledGraph, PlacedGraph};
use crate::error::GraphError;

/// `K_n`. Panics unless `1 <= n <= MAX_VERTICES`.
pub fn complete(n: usize) -> LabeledGraph {
    let all: Vec<usize> = (1..=n).collect();
    PlacedGraph::complete_on(n, &all)
        .expect("vertex count out of range")
        .into_graph()
}

/// The path `1 - 2 - ... - n`.
pub fn path(n: usize) -> LabeledGraph {
    LabeledGraph::from_edges(n, (1..n).map(|i| (i, i + 1))).expect("vertex count out of range")
}

/// The cycle `1 - 2 - ... - n - 1`, `n >= 3`.
pub fn cycle(n: usize) -> LabeledGraph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut g = path(n);
    g.add_edge(n, 1).expect("in range");
    g
}

/// The star `K_{1,n-1}` centred at vertex 1.
pub fn star(n: usize) -> LabeledGraph {
    LabeledGraph::from_edges(n, (2..=n).map(|i| (1, i))).expect("vertex count out of range")
}

/// `H_{n,k} = K_{k-1} ∨ (K_1 ∪ K_{n-k})` placed with the isolated-side
/// vertex at `hub` and the joined clique on `clique_part`.
///
/// The hub has degree `k - 1`; every other pair is adjacent.
pub fn hnk(n: usize, k: usize, hub: usize, clique_part: &[usize]) -> Result<LabeledGraph, GraphError> {
    if k == 0 || k >= n {
        return Err(GraphError::Parameters(format!("need 1 <= k < n, got n={n}, k={k}")));
    }
    if clique_part.len() != k - 1 {
        return Err(GraphError::Parameters(format!(
            "clique part has {} vertices, expected k-1 = {}",
            clique_part.len(),
            k - 1
        )));
    }
    if clique_part.contains(&hub) {
        return Err(GraphError::Parameters(format!("hub {hub} lies inside the clique part")));
    }
    if hub == 0 || hub > n {
        return Err(GraphError::VertexOutOfRange { vertex: hub, n });
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| v != hub).collect();
    let mut g = PlacedGraph::complete_on(n, &rest)?.into_graph();
    let mut seen = Vec::with_capacity(clique_part.len());
    for &b in clique_part {
        if seen.contains(&b) {
            return Err(GraphError::Parameters(format!("vertex {b} repeated in clique part")));
        }
        seen.push(b);
        g.add_edge(hub, b)?;
    }
    Ok(g)
}

/// Part sizes check and the canonical labels of
/// `K_{k+p-1} ∨ ((p+1)K_1 ∪ K_{n-k-2p})`: returns
/// `(joined clique, independent set, clique)`.
///
/// The joined clique takes the lowest labels `1..=k+p-1`, the independent
/// set the `p+1` highest labels, and the plain clique whatever is between.
pub fn lemma_family_parts(n: usize, k: usize, p: usize) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>), GraphError> {
    if k < 2 || n < 4 * k - 1 {
        return Err(GraphError::Parameters(format!(
            "need k >= 2 and n >= 4k-1, got n={n}, k={k}"
        )));
    }
    let p_max = (n - k).div_ceil(2) - 1;
    if p < 1 || p > p_max {
        return Err(GraphError::Parameters(format!("p={p} outside 1..={p_max}")));
    }
    let joined: Vec<usize> = (1..k + p).collect();
    let independent: Vec<usize> = (n - p..=n).collect();
    let clique: Vec<usize> = (k + p..n - p).collect();
    debug_assert_eq!(clique.len(), n - k - 2 * p);
    Ok((joined, independent, clique))
}

/// `K_{k+p-1} ∨ ((p+1)K_1 ∪ K_{n-k-2p})` with the labeling of
/// [`lemma_family_parts`].
pub fn lemma_family(n: usize, k: usize, p: usize) -> Result<LabeledGraph, GraphError> {
    let (joined, independent, clique) = lemma_family_parts(n, k, p)?;
    let b = PlacedGraph::complete_on(n, &joined)?;
    let i = PlacedGraph::empty_on(n, &independent)?;
    let c = PlacedGraph::complete_on(n, &clique)?;
    Ok(b.join(&i.union(&c)?)?.into_graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn binom2(m: usize) -> usize {
        m * m.saturating_sub(1) / 2
    }

    #[test]
    fn complete_counts() {
        assert_eq!(complete(1).edge_count(), 0);
        let k4 = complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        assert_eq!(complete(7).edge_count(), 21);
    }

    #[test]
    fn h71_is_k6_plus_isolated() {
        let g = hnk(7, 1, 1, &[]).unwrap();
        assert_eq!(g.degree(1), 0);
        assert_eq!(g.induced(&[2, 3, 4, 5, 6, 7]), complete(6));
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn h72_degrees() {
        let g = hnk(7, 2, 7, &[1]).unwrap();
        assert_eq!(g.edge_count(), 16);
        assert_eq!(g.degree(7), 1);
        assert_eq!(g.degree(1), 6);
        assert!((2..=6).all(|v| g.degree(v) == 5));
    }

    #[test]
    fn h10_3_counts() {
        let g = hnk(10, 3, 10, &[1, 2]).unwrap();
        assert_eq!(g.edge_count(), 38);
        assert_eq!(g.degree(10), 2);
    }

    #[test]
    fn hnk_invariants_sweep() {
        for n in 2..=14 {
            for k in 1..n {
                let hub = (n * 7 + k) % n + 1;
                let b: Vec<usize> = (1..=n).filter(|&v| v != hub).take(k - 1).collect();
                let g = hnk(n, k, hub, &b).unwrap();
                assert!(g.check_invariants());
                assert_eq!(g.degree(hub), k - 1);
                assert_eq!(g.edge_count(), binom2(n - 1) + k - 1);
                for a in (1..=n).filter(|&v| v != hub) {
                    for c in (a + 1..=n).filter(|&v| v != hub) {
                        assert!(g.has_edge(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn hnk_errors() {
        assert!(hnk(5, 5, 1, &[2, 3, 4, 5]).is_err());
        assert!(hnk(5, 3, 1, &[2]).is_err());
        assert!(hnk(5, 3, 2, &[2, 3]).is_err());
        assert!(hnk(5, 3, 1, &[3, 3]).is_err());
    }

    #[test]
    fn lemma_family_7_2_1() {
        let g = lemma_family(7, 2, 1).unwrap();
        assert_eq!(g.edge_count(), 14);
        let (b, i, c) = lemma_family_parts(7, 2, 1).unwrap();
        assert_eq!((b, i, c), (vec![1, 2], vec![6, 7], vec![3, 4, 5]));
        assert!(!g.has_edge(6, 7));
        assert!(g.has_edge(1, 7));
    }

    #[test]
    fn lemma_family_part_sizes() {
        let (b, i, c) = lemma_family_parts(11, 3, 2).unwrap();
        assert_eq!((b.len(), i.len(), c.len()), (4, 3, 4));
        // n-k even at the top of the range leaves a two-vertex clique
        let (n, k) = (12, 2);
        let p = (n - k) / 2 - 1;
        let (_, _, c) = lemma_family_parts(n, k, p).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn lemma_family_invariants() {
        for k in 2..=4 {
            for n in 4 * k - 1..=20usize {
                for p in 1..=(n - k).div_ceil(2) - 1 {
                    let g = lemma_family(n, k, p).unwrap();
                    let (b, i, c) = lemma_family_parts(n, k, p).unwrap();
                    assert_eq!(b.len() + i.len() + c.len(), n);
                    assert!(i.iter().all(|&v| g.degree(v) == k + p - 1));
                    assert!(g.check_invariants());
                }
            }
        }
    }

    #[test]
    fn lemma_family_rejects_out_of_range() {
        assert!(lemma_family(7, 2, 0).is_err());
        assert!(lemma_family(7, 2, 3).is_err());
        assert!(lemma_family(6, 2, 1).is_err());
        assert!(lemma_family(20, 1, 1).is_err());
    }

    #[test]
    fn small_families() {
        assert_eq!(path(4).edges(), vec![Edge::new(1, 2), Edge::new(2, 3), Edge::new(3, 4)]);
        assert_eq!(cycle(6).degrees(), vec![2; 6]);
        assert_eq!(star(5).degree(1), 4);
    }
}
