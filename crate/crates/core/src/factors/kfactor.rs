//! k-factors through the Tutte gadget: a vertex of degree `d` becomes `d`
//! outer copies (one per incident edge) and `d - k` inner copies joined to
//! every outer copy. Perfect matchings of the gadget are exactly the
//! k-factors of the graph: the outer copies left over after the inner ones
//! are matched are the `k` edges kept at that vertex.

use super::matching::max_matching;
use crate::error::FactorError;
use crate::graph::LabeledGraph;

/// A spanning k-regular subgraph of `g`, or `None` if there is none.
pub fn find_k_factor(g: &LabeledGraph, k: usize) -> Result<Option<LabeledGraph>, FactorError> {
    let n = g.n();
    if k * n % 2 == 1 {
        return Err(FactorError::OddDegreeSum { k, n });
    }
    if k == 0 {
        return Ok(Some(LabeledGraph::empty(n)));
    }
    if g.min_degree() < k {
        return Ok(None);
    }

    let nbrs: Vec<Vec<usize>> = (1..=n).map(|v| g.neighbors(v).collect()).collect();
    // gadget ids: outer copies of v first, then its inner copies
    let mut outer_start = vec![0usize; n + 1];
    let mut next = 0;
    for v in 1..=n {
        outer_start[v] = next;
        next += 2 * nbrs[v - 1].len() - k;
    }
    let mut adj = vec![Vec::new(); next];
    let mut outer_edges = Vec::new();
    for v in 1..=n {
        let d = nbrs[v - 1].len();
        let base = outer_start[v];
        for i in 0..d {
            for j in 0..d - k {
                adj[base + i].push(base + d + j);
                adj[base + d + j].push(base + i);
            }
            let w = nbrs[v - 1][i];
            if v < w {
                let back = nbrs[w - 1].iter().position(|&x| x == v).expect("symmetric");
                let (a, b) = (base + i, outer_start[w] + back);
                adj[a].push(b);
                adj[b].push(a);
                outer_edges.push((a, b, v, w));
            }
        }
    }

    let mate = max_matching(&adj);
    if mate.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut f = LabeledGraph::empty(n);
    for (a, b, v, w) in outer_edges {
        if mate[a] == Some(b) {
            f.add_edge(v, w).expect("edge of g");
        }
    }
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hnk};

    fn assert_factor(g: &LabeledGraph, f: &LabeledGraph, k: usize) {
        assert!(f.is_subgraph_of(g));
        assert!((1..=g.n()).all(|v| f.degree(v) == k));
    }

    #[test]
    fn examples() {
        let f = find_k_factor(&complete(4), 1).unwrap().unwrap();
        assert_factor(&complete(4), &f, 1);
        assert_eq!(find_k_factor(&hnk(7, 2, 7, &[1]).unwrap(), 2).unwrap(), None);
        assert_eq!(find_k_factor(&cycle(6), 2).unwrap(), Some(cycle(6)));
        assert_eq!(
            find_k_factor(&complete(5), 1),
            Err(FactorError::OddDegreeSum { k: 1, n: 5 })
        );
    }

    #[test]
    fn larger_factors() {
        for (n, k) in [(10, 3), (9, 4), (30, 2), (12, 5)] {
            let f = find_k_factor(&complete(n), k).unwrap().unwrap();
            assert_factor(&complete(n), &f, k);
        }
        let g = hnk(12, 3, 12, &[1, 2]).unwrap();
        assert_eq!(find_k_factor(&g, 3).unwrap(), None);
        let f = find_k_factor(&g, 2).unwrap().unwrap();
        assert_factor(&g, &f, 2);
    }

    #[test]
    fn no_perfect_matching_in_two_triangles_plus_edge() {
        // two triangles joined by nothing: n=6, a 1-factor needs to pair across
        let g = LabeledGraph::from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(find_k_factor(&g, 1).unwrap(), None);
        assert!(find_k_factor(&g, 2).unwrap().is_some());
    }
}
