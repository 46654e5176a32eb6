//! Maximum matchings: Edmonds' blossom algorithm for general graphs and an
//! incremental augmenting-path matcher for bipartite edge/colour graphs.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Maximum matching of the graph on `0..adj.len()`; `mate[v]` is the partner.
pub fn max_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut b = Blossom::new(adj);
    b.greedy();
    for root in 0..adj.len() {
        if b.mate[root] == NONE {
            let end = b.find_path(root);
            if end != NONE {
                b.augment(end);
            }
        }
    }
    b.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn greedy(&mut self) {
        for v in 0..self.adj.len() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| w != v && self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Breadth-first search for an augmenting path from `root`; returns its
    /// free far end or `NONE`.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Bipartite matching between item slots and colours, updated one slot at a
/// time. A slot may take colour `c` iff `c` is in its candidate list.
#[derive(Clone, Debug)]
pub struct ColorMatcher {
    candidates: Vec<Vec<usize>>,
    color_of: Vec<usize>,
    owner: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl ColorMatcher {
    pub fn new(colors: usize) -> Self {
        ColorMatcher {
            candidates: Vec::new(),
            color_of: Vec::new(),
            owner: vec![NONE; colors],
            stamp: vec![0; colors],
            epoch: 0,
        }
    }

    /// Adds a slot and tries to match it by one augmenting path. On failure
    /// nothing changes and `None` is returned; otherwise the slot id.
    pub fn push(&mut self, candidates: Vec<usize>) -> Option<usize> {
        let slot = self.candidates.len();
        self.candidates.push(candidates);
        self.color_of.push(NONE);
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        if self.augment(slot) {
            Some(slot)
        } else {
            self.candidates.pop();
            self.color_of.pop();
            None
        }
    }

    /// Removes the most recently pushed slot, freeing its colour.
    pub fn pop(&mut self) {
        let slot = self.candidates.len() - 1;
        let c = self.color_of[slot];
        if c != NONE {
            self.owner[c] = NONE;
        }
        self.candidates.pop();
        self.color_of.pop();
    }

    fn augment(&mut self, slot: usize) -> bool {
        for i in 0..self.candidates[slot].len() {
            let c = self.candidates[slot][i];
            if self.stamp[c] == self.epoch {
                continue;
            }
            self.stamp[c] = self.epoch;
            let holder = self.owner[c];
            if holder == NONE || self.augment(holder) {
                self.owner[c] = slot;
                self.color_of[slot] = c;
                return true;
            }
        }
        false
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Current colour of every slot, in push order.
    pub fn colors(&self) -> &[usize] {
        &self.color_of
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(m: &[Option<usize>]) -> usize {
        m.iter().filter(|x| x.is_some()).count() / 2
    }

    fn check(adj: &[Vec<usize>], m: &[Option<usize>]) {
        for (v, &w) in m.iter().enumerate() {
            if let Some(w) = w {
                assert_eq!(m[w], Some(v));
                assert!(adj[v].contains(&w));
            }
        }
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    #[test]
    fn odd_cycle_needs_blossom() {
        // triangle 0-1-2 with pendant paths 2-3 and 0-4-5; greedy picks 0-1
        let adj = graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (4, 5)]);
        let m = max_matching(&adj);
        check(&adj, &m);
        assert_eq!(size(&m), 3);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        let adj = graph(10, &e);
        let m = max_matching(&adj);
        check(&adj, &m);
        assert_eq!(size(&m), 5);
    }

    #[test]
    fn star_matches_once() {
        let adj = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(size(&max_matching(&adj)), 1);
    }

    #[test]
    fn color_matcher_augments_and_rejects() {
        let mut cm = ColorMatcher::new(2);
        assert_eq!(cm.push(vec![0, 1]), Some(0));
        // needs colour 0, which forces slot 0 onto colour 1
        assert_eq!(cm.push(vec![0]), Some(1));
        assert_eq!(cm.colors(), &[1, 0]);
        assert_eq!(cm.push(vec![0, 1]), None);
        assert_eq!(cm.len(), 2);
        cm.pop();
        assert_eq!(cm.push(vec![0]), Some(1));
    }
}
