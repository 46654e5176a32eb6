//! Exact rainbow searches by backtracking.
//!
//! Partial solutions keep a bipartite matching between the chosen edges and
//! the colours that contain them. Adding an edge runs one augmenting path;
//! if none exists the edge is rejected on the spot, so every partial state
//! is colour-feasible. Removing an edge frees its colour and leaves the rest
//! of the matching valid.

use super::matching::ColorMatcher;
use super::{Assignment, RainbowFactor, SearchLimits, SearchOutcome};
use crate::error::FactorError;
use crate::graph::{bits, Edge, GraphCollection};

enum Step {
    Done,
    Fail,
    Abort,
}

struct Search {
    n: usize,
    k: usize,
    union: Vec<u64>,
    /// Colours (0-based) containing each pair, indexed `a * n + b`.
    colors_of: Vec<Vec<usize>>,
    chosen: Vec<u64>,
    deg: Vec<usize>,
    stack: Vec<(usize, usize)>,
    matcher: ColorMatcher,
    nodes: u64,
    cap: u64,
}

impl Search {
    fn new(gc: &GraphCollection, k: usize, limits: SearchLimits) -> Self {
        let n = gc.n();
        let mut colors_of = vec![Vec::new(); n * n];
        let mut union = vec![0u64; n];
        for (c, g) in gc.graphs().iter().enumerate() {
            for e in g.edges() {
                let (a, b) = (e.lo() - 1, e.hi() - 1);
                colors_of[a * n + b].push(c);
                colors_of[b * n + a].push(c);
                union[a] |= 1 << b;
                union[b] |= 1 << a;
            }
        }
        Search {
            n,
            k,
            union,
            colors_of,
            chosen: vec![0; n],
            deg: vec![0; n],
            stack: Vec::new(),
            matcher: ColorMatcher::new(gc.len()),
            nodes: 0,
            cap: limits.node_cap.unwrap_or(u64::MAX),
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.cap
    }

    fn open_mask(&self) -> u64 {
        (0..self.n).filter(|&x| self.deg[x] < self.k).fold(0, |m, x| m | 1 << x)
    }

    fn try_add(&mut self, a: usize, b: usize) -> bool {
        let cands = self.colors_of[a * self.n + b].clone();
        if self.matcher.push(cands).is_none() {
            return false;
        }
        self.chosen[a] |= 1 << b;
        self.chosen[b] |= 1 << a;
        self.deg[a] += 1;
        self.deg[b] += 1;
        self.stack.push((a, b));
        true
    }

    fn remove_last(&mut self) {
        let (a, b) = self.stack.pop().expect("nonempty");
        self.matcher.pop();
        self.chosen[a] &= !(1 << b);
        self.chosen[b] &= !(1 << a);
        self.deg[a] -= 1;
        self.deg[b] -= 1;
    }

    fn factor(&self, k: usize) -> RainbowFactor {
        let assignments = self
            .stack
            .iter()
            .zip(self.matcher.colors())
            .map(|(&(a, b), &c)| Assignment {
                edge: Edge::new(a + 1, b + 1),
                color: c + 1,
            })
            .collect();
        RainbowFactor::new(k, assignments)
    }

    // k-factor search: complete vertices in ascending order, each by
    // partners in ascending order.

    fn next_vertex(&mut self) -> Step {
        match (0..self.n).find(|&x| self.deg[x] < self.k) {
            None => Step::Done,
            Some(v) => self.extend(v, v + 1),
        }
    }

    fn degrees_feasible(&self, v: usize, start: usize) -> bool {
        let open = self.open_mask();
        let from_start = u64::MAX.checked_shl(start as u32).unwrap_or(0);
        (0..self.n).filter(|&x| self.deg[x] < self.k).all(|x| {
            let mut avail = self.union[x] & !self.chosen[x] & open;
            if x == v {
                avail &= from_start;
            }
            avail.count_ones() as usize >= self.k - self.deg[x]
        })
    }

    fn extend(&mut self, v: usize, start: usize) -> Step {
        if self.tick() {
            return Step::Abort;
        }
        if !self.degrees_feasible(v, start) {
            return Step::Fail;
        }
        let from_start = u64::MAX.checked_shl(start as u32).unwrap_or(0);
        let cands = self.union[v] & !self.chosen[v] & self.open_mask() & from_start;
        for w in bits(cands) {
            if !self.try_add(v, w) {
                continue;
            }
            let r = if self.deg[v] == self.k {
                self.next_vertex()
            } else {
                self.extend(v, w + 1)
            };
            match r {
                Step::Fail => self.remove_last(),
                done_or_abort => return done_or_abort,
            }
        }
        Step::Fail
    }

    // Hamiltonian cycle search: a path grown from vertex 0.

    fn cycle(&mut self, path: &mut Vec<usize>, visited: u64) -> Step {
        if self.tick() {
            return Step::Abort;
        }
        let last = *path.last().expect("nonempty");
        if path.len() == self.n {
            return if self.union[last] & 1 != 0 && self.try_add(last, 0) {
                Step::Done
            } else {
                Step::Fail
            };
        }
        let full = u64::MAX >> (64 - self.n);
        let unvisited = full & !visited;
        let reachable = unvisited | 1 | 1 << last;
        if bits(unvisited).any(|x| (self.union[x] & reachable & !(1 << x)).count_ones() < 2) {
            return Step::Fail;
        }
        for w in bits(self.union[last] & unvisited) {
            if !self.try_add(last, w) {
                continue;
            }
            path.push(w);
            match self.cycle(path, visited | 1 << w) {
                Step::Fail => {
                    path.pop();
                    self.remove_last();
                }
                done_or_abort => return done_or_abort,
            }
        }
        Step::Fail
    }
}

fn outcome(step: Step, search: &Search, k: usize) -> SearchOutcome<RainbowFactor> {
    match step {
        Step::Done => SearchOutcome::Found(search.factor(k)),
        Step::Fail => SearchOutcome::NotFound,
        Step::Abort => SearchOutcome::Unknown,
    }
}

/// Exact search for a rainbow `gc.k()`-factor.
pub fn find_rainbow_k_factor(
    gc: &GraphCollection,
    limits: SearchLimits,
) -> Result<SearchOutcome<RainbowFactor>, FactorError> {
    gc.check_factor_size()?;
    Ok(k_factor_search(gc, gc.k(), limits))
}

fn k_factor_search(gc: &GraphCollection, k: usize, limits: SearchLimits) -> SearchOutcome<RainbowFactor> {
    let mut s = Search::new(gc, k, limits);
    let step = s.next_vertex();
    outcome(step, &s, k)
}

/// Rainbow 1-factor; the collection's own `k` is ignored.
pub fn find_rainbow_perfect_matching(
    gc: &GraphCollection,
    limits: SearchLimits,
) -> Result<SearchOutcome<RainbowFactor>, FactorError> {
    let n = gc.n();
    if n % 2 == 1 {
        return Err(FactorError::OddDegreeSum { k: 1, n });
    }
    if gc.len() != n / 2 {
        return Err(FactorError::CollectionSize {
            found: gc.len(),
            expected: n / 2,
        });
    }
    Ok(k_factor_search(gc, 1, limits))
}

/// Rainbow Hamiltonian cycle, reported as a 2-factor.
pub fn find_rainbow_hamiltonian_cycle(
    gc: &GraphCollection,
    limits: SearchLimits,
) -> Result<SearchOutcome<RainbowFactor>, FactorError> {
    let n = gc.n();
    if n < 3 {
        return Err(FactorError::InvalidInput(format!("a cycle needs n >= 3, got {n}")));
    }
    if gc.len() != n {
        return Err(FactorError::CollectionSize {
            found: gc.len(),
            expected: n,
        });
    }
    let mut s = Search::new(gc, 2, limits);
    let step = s.cycle(&mut vec![0], 1);
    Ok(outcome(step, &s, 2))
}
