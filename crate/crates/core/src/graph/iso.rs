//! Exact isomorphism testing for small graphs.
//!
//! Both graphs are coloured jointly (as one disjoint union) and refined to a
//! stable colouring; vertices of the first graph are then individualized one
//! cell at a time against every same-coloured candidate of the second,
//! refining after each choice. A branch dies as soon as the two colour
//! histograms differ.

use super::{bits, LabeledGraph};
use crate::error::GraphError;

/// Hard cap on the order accepted by [`is_isomorphic`].
pub const MAX_ISO_VERTICES: usize = 16;

pub fn is_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> Result<bool, GraphError> {
    let largest = g.n().max(h.n());
    if largest > MAX_ISO_VERTICES {
        return Err(GraphError::TooLargeForIsomorphism(largest));
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut sorted_g = g.degrees();
    let mut sorted_h = h.degrees();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return Ok(false);
    }
    let pair = Pair::new(g, h);
    Ok(pair.search(vec![0; 2 * g.n()]))
}

struct Pair<'a> {
    n: usize,
    g: &'a LabeledGraph,
    h: &'a LabeledGraph,
}

impl Pair<'_> {
    fn new<'a>(g: &'a LabeledGraph, h: &'a LabeledGraph) -> Pair<'a> {
        Pair { n: g.n(), g, h }
    }

    fn row(&self, v: usize) -> u64 {
        if v < self.n {
            self.g.rows[v]
        } else {
            self.h.rows[v - self.n]
        }
    }

    fn class_count(colors: &[u32]) -> usize {
        let mut c = colors.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Refines to the coarsest stable colouring below `colors`. Colours are
    /// renumbered by sorted signature, so equal inputs give equal outputs on
    /// both sides.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = Self::class_count(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..2 * self.n)
                .map(|v| {
                    let offset = if v < self.n { 0 } else { self.n };
                    let mut nb: Vec<u32> = bits(self.row(v)).map(|u| colors[u + offset]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut keys = sigs.clone();
            keys.sort();
            keys.dedup();
            for (v, s) in sigs.iter().enumerate() {
                colors[v] = keys.binary_search(s).expect("present") as u32;
            }
            if keys.len() == classes {
                break;
            }
            classes = keys.len();
        }
    }

    fn balanced(&self, colors: &[u32]) -> bool {
        let mut left = colors[..self.n].to_vec();
        let mut right = colors[self.n..].to_vec();
        left.sort_unstable();
        right.sort_unstable();
        left == right
    }

    fn search(&self, mut colors: Vec<u32>) -> bool {
        self.refine(&mut colors);
        if !self.balanced(&colors) {
            return false;
        }
        let n = self.n;
        // smallest non-singleton cell on the left side
        let mut best: Option<(usize, u32)> = None;
        for v in 0..n {
            let size = colors[..n].iter().filter(|&&c| c == colors[v]).count();
            if size > 1 && best.is_none_or(|(s, _)| size < s) {
                best = Some((size, colors[v]));
            }
        }
        let Some((_, cell)) = best else {
            return self.is_mapping_isomorphism(&colors);
        };
        let x = (0..n).find(|&v| colors[v] == cell).expect("cell nonempty");
        let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
        for y in (n..2 * n).filter(|&v| colors[v] == cell) {
            let mut next = colors.clone();
            next[x] = fresh;
            next[y] = fresh;
            if self.search(next) {
                return true;
            }
        }
        false
    }

    fn is_mapping_isomorphism(&self, colors: &[u32]) -> bool {
        let n = self.n;
        let mut image = vec![0usize; n];
        for v in 0..n {
            image[v] = (n..2 * n).find(|&w| colors[w] == colors[v]).expect("balanced") - n;
        }
        (0..n).all(|a| (0..n).all(|b| (self.g.rows[a] >> b & 1) == (self.h.rows[image[a]] >> image[b] & 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hnk, path, LabeledGraph};

    #[test]
    fn relabeled_path() {
        let p = path(4);
        let q = p.relabel(&[3, 1, 4, 2]).unwrap();
        assert!(is_isomorphic(&p, &q).unwrap());
    }

    #[test]
    fn triangle_plus_vertex_vs_path() {
        let t = LabeledGraph::from_edges(4, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(!is_isomorphic(&t, &path(4)).unwrap());
    }

    #[test]
    fn hnk_copies() {
        let g = hnk(7, 2, 7, &[1]).unwrap();
        let h = hnk(7, 2, 1, &[5]).unwrap();
        assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn regular_nonisomorphic() {
        // C_6 vs two triangles: same degree sequence, different structure
        let two_triangles = LabeledGraph::from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert!(!is_isomorphic(&cycle(6), &two_triangles).unwrap());
        // K_{3,3} vs the triangular prism, both 3-regular on 6 vertices
        let k33 = LabeledGraph::from_edges(
            6,
            [(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)],
        )
        .unwrap();
        let prism = LabeledGraph::from_edges(
            6,
            [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)],
        )
        .unwrap();
        assert!(!is_isomorphic(&k33, &prism).unwrap());
        assert!(is_isomorphic(&k33, &k33.relabel(&[1, 4, 2, 5, 3, 6]).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        assert!(is_isomorphic(&complete(16), &complete(16)).unwrap());
        assert!(is_isomorphic(&LabeledGraph::empty(16), &LabeledGraph::empty(16)).unwrap());
        let c = cycle(16);
        let perm: Vec<usize> = (0..16).map(|i| (i * 5) % 16 + 1).collect();
        assert!(is_isomorphic(&c, &c.relabel(&perm).unwrap()).unwrap());
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            is_isomorphic(&complete(17), &complete(17)),
            Err(GraphError::TooLargeForIsomorphism(17))
        );
        assert!(!is_isomorphic(&complete(3), &complete(4)).unwrap());
    }
}
