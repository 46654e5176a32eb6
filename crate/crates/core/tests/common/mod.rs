//! Independent oracles for the integration tests. Nothing here calls the
//! library's search, matching or spectral code.

#![allow(dead_code)]

use rfl_core::graph::{GraphCollection, LabeledGraph};

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every `kn/2`-subset of pairs is tried; a k-regular one is then matched to
/// the colours by trying every permutation.
pub fn brute_rainbow_exists(gc: &GraphCollection) -> bool {
    let (n, k, m) = (gc.n(), gc.k(), gc.len());
    if k * n != 2 * m {
        return false;
    }
    let pairs = all_pairs(n);
    let mut chosen = Vec::with_capacity(m);
    fn rec(pairs: &[(usize, usize)], start: usize, chosen: &mut Vec<(usize, usize)>, gc: &GraphCollection) -> bool {
        let m = gc.len();
        if chosen.len() == m {
            let n = gc.n();
            let mut deg = vec![0; n + 1];
            for &(a, b) in chosen.iter() {
                deg[a] += 1;
                deg[b] += 1;
            }
            if (1..=n).any(|v| deg[v] != gc.k()) {
                return false;
            }
            let mut perm: Vec<usize> = (0..m).collect();
            loop {
                if chosen
                    .iter()
                    .zip(&perm)
                    .all(|(&(a, b), &c)| gc.graphs()[c].has_edge(a, b))
                {
                    return true;
                }
                if !next_permutation(&mut perm) {
                    return false;
                }
            }
        }
        for i in start..pairs.len() {
            chosen.push(pairs[i]);
            if rec(pairs, i + 1, chosen, gc) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(&pairs, 0, &mut chosen, gc)
}

/// Include/exclude backtracking over the edges of `g` with a degree cap.
pub fn brute_k_factor_exists(g: &LabeledGraph, k: usize) -> bool {
    let n = g.n();
    let edges: Vec<(usize, usize)> = all_pairs(n).into_iter().filter(|&(a, b)| g.has_edge(a, b)).collect();
    fn rec(edges: &[(usize, usize)], i: usize, deg: &mut Vec<usize>, k: usize) -> bool {
        if i == edges.len() {
            return deg[1..].iter().all(|&d| d == k);
        }
        let (a, b) = edges[i];
        if deg[a] < k && deg[b] < k {
            deg[a] += 1;
            deg[b] += 1;
            let ok = rec(edges, i + 1, deg, k);
            deg[a] -= 1;
            deg[b] -= 1;
            if ok {
                return true;
            }
        }
        rec(edges, i + 1, deg, k)
    }
    rec(&edges, 0, &mut vec![0; n + 1], k)
}

/// Largest adjacency eigenvalue from a dense symmetric eigensolver.
pub fn eigen_radius(g: &LabeledGraph) -> f64 {
    let n = g.n();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| if g.has_edge(i + 1, j + 1) { 1.0 } else { 0.0 });
    nalgebra::SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Direct transcription of the shift operation from its definition.
pub fn kelmans_by_definition(g: &LabeledGraph, u: usize, v: usize) -> LabeledGraph {
    let mut h = g.clone();
    for w in 1..=g.n() {
        if w != u && w != v && g.has_edge(v, w) && !g.has_edge(u, w) {
            h.remove_edge(v, w).unwrap();
            h.add_edge(u, w).unwrap();
        }
    }
    h
}
