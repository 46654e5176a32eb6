//! Removing repeated edges from a union of rainbow layers.
//!
//! Each layer is a rainbow factor on its own colours; together they cover
//! every colour once and every vertex has total degree `k`, but the same
//! pair may be used by several colours. Every move below replaces a few
//! assignments while keeping all degrees and memberships, and removes one
//! copy of the repeated pair.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hub::HubCollection;
use crate::error::ScheduleError;
use crate::factors::{verify_rainbow, Assignment, RainbowFactor};
use crate::graph::Edge;

/// A group of assignments that is regular on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub assignments: Vec<Assignment>,
}

impl Layer {
    pub fn new(assignments: Vec<Assignment>) -> Self {
        Layer { assignments }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairTag {
    /// Two-edge switch with a partner edge.
    Case1,
    /// Hub-side move through another edge of the layer not touching the hub.
    Subcase21,
    /// Hub-side move through an edge of the layer at the hub.
    Subcase22,
    /// No move applies; the caller has to search directly.
    Fallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Change {
    pub color: usize,
    pub from: Edge,
    pub to: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairStep {
    pub tag: RepairTag,
    pub collision: Edge,
    pub changes: Vec<Change>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairOutcome {
    pub factor: Option<RainbowFactor>,
    pub steps: Vec<RepairStep>,
    /// Whether the step budget of `k^2 n^2` ran out.
    pub cap_hit: bool,
}

impl RepairOutcome {
    pub fn used_fallback(&self) -> bool {
        self.factor.is_none()
    }
}

struct Workspace<'a> {
    hc: &'a HubCollection,
    edge_of: Vec<Edge>,
    layer_of: Vec<usize>,
    holders: BTreeMap<Edge, Vec<usize>>,
}

impl Workspace<'_> {
    fn mult(&self, e: Edge) -> usize {
        self.holders.get(&e).map_or(0, Vec::len)
    }

    fn member(&self, color: usize, e: Edge) -> bool {
        self.hc.parts(color).contains(e)
    }

    fn collision(&self) -> Option<Edge> {
        self.holders.iter().find(|(_, h)| h.len() > 1).map(|(e, _)| *e)
    }

    /// Holders of `e`, latest layer first.
    fn movers(&self, e: Edge) -> Vec<usize> {
        let mut h = self.holders[&e].clone();
        h.sort_by_key(|&c| std::cmp::Reverse((self.layer_of[c], c)));
        h
    }

    /// Colours by layer, then by edge; `first` layer leads when given.
    fn scan_order(&self, first: Option<usize>) -> Vec<usize> {
        let mut cs: Vec<usize> = (1..self.edge_of.len()).collect();
        cs.sort_by_key(|&c| {
            (
                first.is_none_or(|l| self.layer_of[c] != l),
                self.layer_of[c],
                self.edge_of[c],
                c,
            )
        });
        cs
    }

    fn hub(&self, color: usize) -> usize {
        self.hc.hub(color)
    }

    /// Applies the changes if every new edge is in its member; fresh
    /// demands that no new edge is already used.
    fn try_apply(&mut self, tag: RepairTag, collision: Edge, new: &[(usize, Edge)], fresh: bool) -> Option<RepairStep> {
        if !new.iter().all(|&(c, e)| self.member(c, e)) {
            return None;
        }
        if fresh {
            let mut added: Vec<Edge> = new.iter().map(|p| p.1).collect();
            added.sort_unstable();
            if added.windows(2).any(|w| w[0] == w[1]) || added.iter().any(|&e| self.mult(e) > 0) {
                return None;
            }
        }
        let changes: Vec<Change> = new
            .iter()
            .map(|&(color, to)| Change {
                color,
                from: self.edge_of[color],
                to,
            })
            .collect();
        for ch in &changes {
            let h = self.holders.get_mut(&ch.from).expect("held");
            h.retain(|&c| c != ch.color);
            if h.is_empty() {
                self.holders.remove(&ch.from);
            }
            self.holders.entry(ch.to).or_default().push(ch.color);
            self.edge_of[ch.color] = ch.to;
        }
        Some(RepairStep {
            tag,
            collision,
            changes,
        })
    }

    /// `vv'` and a disjoint partner `ww'` become `vw, v'w'` or `vw', v'w`.
    fn case1(&mut self, e: Edge) -> Option<RepairStep> {
        let (v, v2) = (e.lo(), e.hi());
        for a in self.movers(e) {
            for t in self.scan_order(None) {
                let p = self.edge_of[t];
                if t == a || p.contains(v) || p.contains(v2) {
                    continue;
                }
                let (w, w2) = (p.lo(), p.hi());
                for (e1, e2) in [
                    (Edge::new(v, w), Edge::new(v2, w2)),
                    (Edge::new(v, w2), Edge::new(v2, w)),
                ] {
                    for (ea, et) in [(e1, e2), (e2, e1)] {
                        if let Some(step) = self.try_apply(RepairTag::Case1, e, &[(a, ea), (t, et)], true) {
                            return Some(step);
                        }
                    }
                }
            }
        }
        None
    }

    /// Moves for a repeated pair at the hub of the colour being moved.
    fn hub_side(&mut self, e: Edge, fresh: bool) -> Option<RepairStep> {
        for a in self.movers(e) {
            let u = self.hub(a);
            let Some(v2) = e.other(u) else { continue };
            let order = self.scan_order(Some(self.layer_of[a]));
            for &c4 in &order {
                let xe = self.edge_of[c4];
                let h4 = self.hub(c4);
                if c4 == a || h4 == u || xe == e {
                    continue;
                }
                let step = if xe.contains(u) {
                    let x = xe.other(u).expect("contains");
                    self.subcase22(e, a, u, v2, c4, x, &order, fresh)
                } else {
                    self.subcase21(e, a, u, v2, c4, &order, fresh)
                };
                if step.is_some() {
                    return step;
                }
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn subcase21(
        &mut self,
        e: Edge,
        a: usize,
        u: usize,
        v2: usize,
        c4: usize,
        order: &[usize],
        fresh: bool,
    ) -> Option<RepairStep> {
        let xe = self.edge_of[c4];
        for (x, x2) in [(xe.lo(), xe.hi()), (xe.hi(), xe.lo())] {
            if x2 == self.hub(c4) {
                continue;
            }
            if x2 == v2 {
                continue;
            }
            if x != v2 {
                let new = [(a, Edge::new(x, v2)), (c4, Edge::new(u, x2))];
                if let Some(s) = self.try_apply(RepairTag::Subcase21, e, &new, fresh) {
                    return Some(s);
                }
                continue;
            }
            for &t in order {
                let p = self.edge_of[t];
                if t == a || t == c4 || p.contains(u) || p.contains(v2) {
                    continue;
                }
                for (w, w2) in [(p.lo(), p.hi()), (p.hi(), p.lo())] {
                    let new = [(a, Edge::new(w, v2)), (c4, Edge::new(u, x2)), (t, Edge::new(v2, w2))];
                    if let Some(s) = self.try_apply(RepairTag::Subcase21, e, &new, fresh) {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn subcase22(
        &mut self,
        e: Edge,
        a: usize,
        u: usize,
        v2: usize,
        c4: usize,
        x: usize,
        order: &[usize],
        fresh: bool,
    ) -> Option<RepairStep> {
        let h4 = self.hub(c4);
        if x == v2 {
            return None;
        }
        if self.hc.parts(a).b.contains(&x) {
            for &t in order {
                let p = self.edge_of[t];
                if t == a || t == c4 || p.contains(u) || p.contains(v2) {
                    continue;
                }
                for (w, w2) in [(p.lo(), p.hi()), (p.hi(), p.lo())] {
                    if w == h4 {
                        continue;
                    }
                    let new = [(a, Edge::new(u, x)), (c4, Edge::new(w, u)), (t, Edge::new(v2, w2))];
                    if let Some(s) = self.try_apply(RepairTag::Subcase22, e, &new, fresh) {
                        return Some(s);
                    }
                }
            }
            return None;
        }
        let ys: Vec<usize> = self
            .hc
            .parts(a)
            .b
            .iter()
            .copied()
            .filter(|&y| y != v2 && self.mult(Edge::new(u, y)) == 0)
            .collect();
        for y in ys {
            for &c5 in order {
                let ye = self.edge_of[c5];
                if c5 == a || !ye.contains(y) {
                    continue;
                }
                let y2 = ye.other(y).expect("contains");
                if y2 == v2 || y2 == u {
                    continue;
                }
                let h5 = self.hub(c5);
                let new = if h5 != u && y != h5 {
                    [(a, Edge::new(v2, y2)), (c5, Edge::new(u, y))]
                } else {
                    [(a, Edge::new(u, y)), (c5, Edge::new(v2, y2))]
                };
                if let Some(s) = self.try_apply(RepairTag::Subcase22, e, &new, fresh) {
                    return Some(s);
                }
            }
        }
        None
    }
}

impl<'a> Workspace<'a> {
    /// Checks that the layers cover every colour once with total degree `k`
    /// and index them.
    fn build(layers: &[Layer], hc: &'a HubCollection) -> Result<Self, ScheduleError> {
        hc.collection().check_factor_size()?;
        let (n, k, m) = (hc.n(), hc.k(), hc.len());
        let mut edge_of = vec![Edge::new(1, 2); m + 1];
        let mut layer_of = vec![usize::MAX; m + 1];
        let mut holders: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut deg = vec![0usize; n + 1];
        for (l, layer) in layers.iter().enumerate() {
            for a in &layer.assignments {
                if a.color == 0 || a.color > m {
                    return Err(ScheduleError::MalformedLayers(format!(
                        "color {} out of range",
                        a.color
                    )));
                }
                if layer_of[a.color] != usize::MAX {
                    return Err(ScheduleError::MalformedLayers(format!("color {} used twice", a.color)));
                }
                if a.edge.hi() > n {
                    return Err(ScheduleError::MalformedLayers(format!("{} leaves 1..={n}", a.edge)));
                }
                if !hc.parts(a.color).contains(a.edge) {
                    return Err(ScheduleError::MalformedLayers(format!(
                        "{} is not in member {}",
                        a.edge, a.color
                    )));
                }
                layer_of[a.color] = l;
                edge_of[a.color] = a.edge;
                holders.entry(a.edge).or_default().push(a.color);
                deg[a.edge.lo()] += 1;
                deg[a.edge.hi()] += 1;
            }
        }
        if let Some(c) = (1..=m).find(|&c| layer_of[c] == usize::MAX) {
            return Err(ScheduleError::MalformedLayers(format!("color {c} unused")));
        }
        if let Some(v) = (1..=n).find(|&v| deg[v] != k) {
            return Err(ScheduleError::MalformedLayers(format!(
                "vertex {v} has degree {} instead of {k}",
                deg[v]
            )));
        }

        Ok(Workspace {
            hc,
            edge_of,
            layer_of,
            holders,
        })
    }
}

/// Rewrites the union of `layers` into a rainbow k-factor of `hc`, or
/// reports that no move applies (or the `k^2 n^2` budget ran out).
pub fn disjointify_repair(layers: &[Layer], hc: &HubCollection) -> Result<RepairOutcome, ScheduleError> {
    let gc = hc.collection();
    let (n, k, m) = (hc.n(), hc.k(), hc.len());
    let mut ws = Workspace::build(layers, hc)?;
    let cap = k * k * n * n;
    let mut steps = Vec::new();
    while let Some(e) = ws.collision() {
        if steps.len() == cap {
            return Ok(RepairOutcome {
                factor: None,
                steps,
                cap_hit: true,
            });
        }
        let step = ws
            .case1(e)
            .or_else(|| ws.hub_side(e, true))
            .or_else(|| ws.hub_side(e, false));
        match step {
            Some(s) => steps.push(s),
            None => {
                steps.push(RepairStep {
                    tag: RepairTag::Fallback,
                    collision: e,
                    changes: Vec::new(),
                });
                return Ok(RepairOutcome {
                    factor: None,
                    steps,
                    cap_hit: false,
                });
            }
        }
    }

    let factor = RainbowFactor::new(
        k,
        (1..=m)
            .map(|color| Assignment {
                edge: ws.edge_of[color],
                color,
            })
            .collect(),
    );
    debug_assert_eq!(verify_rainbow(&factor, gc), Ok(()));
    Ok(RepairOutcome {
        factor: verify_rainbow(&factor, gc).is_ok().then_some(factor),
        steps,
        cap_hit: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asg(a: usize, b: usize, color: usize) -> Assignment {
        Assignment {
            edge: Edge::new(a, b),
            color,
        }
    }

    #[test]
    fn two_matchings_sharing_one_edge() {
        // n=8, k=2: colours 1..4 hold M1, colours 5..8 hold M2
        let members: Vec<(usize, Vec<usize>)> = vec![
            (8, vec![3]),
            (1, vec![2]),
            (2, vec![3]),
            (3, vec![4]),
            (4, vec![5]),
            (6, vec![7]),
            (5, vec![6]),
            (7, vec![8]),
        ];
        let hc = HubCollection::from_parts(8, 2, &members).unwrap();
        let l1 = Layer::new(vec![asg(1, 2, 1), asg(3, 4, 2), asg(5, 6, 3), asg(7, 8, 4)]);
        let l2 = Layer::new(vec![asg(1, 2, 5), asg(3, 5, 6), asg(4, 7, 7), asg(6, 8, 8)]);
        let out = disjointify_repair(&[l1, l2], &hc).unwrap();
        let f = out.factor.expect("repaired");
        assert_eq!(verify_rainbow(&f, hc.collection()), Ok(()));
        assert_eq!(out.steps.len(), 1);
        assert_eq!(out.steps[0].tag, RepairTag::Case1);
        assert_eq!(out.steps[0].collision, Edge::new(1, 2));
    }

    #[test]
    fn disjoint_layers_untouched() {
        let members: Vec<(usize, Vec<usize>)> = (1..=4).map(|h| (h, vec![h % 4 + 1])).collect();
        let hc = HubCollection::from_parts(4, 2, &members).unwrap();
        let l = Layer::new(vec![asg(1, 2, 3), asg(2, 3, 4), asg(3, 4, 1), asg(1, 4, 2)]);
        let out = disjointify_repair(&[l], &hc).unwrap();
        assert!(out.steps.is_empty());
        assert!(out.factor.is_some());
    }

    #[test]
    fn malformed_layers() {
        let members: Vec<(usize, Vec<usize>)> = (1..=4).map(|h| (h, vec![h % 4 + 1])).collect();
        let hc = HubCollection::from_parts(4, 2, &members).unwrap();
        let missing = Layer::new(vec![asg(1, 2, 3), asg(2, 3, 4), asg(3, 4, 1)]);
        assert!(matches!(
            disjointify_repair(&[missing], &hc),
            Err(ScheduleError::MalformedLayers(_))
        ));
        let outside = Layer::new(vec![asg(1, 4, 1), asg(2, 3, 4), asg(3, 4, 3), asg(1, 2, 2)]);
        assert!(matches!(
            disjointify_repair(&[outside], &hc),
            Err(ScheduleError::MalformedLayers(_))
        ));
    }

    #[test]
    fn hub_side_collision() {
        // n=7, k=2, one cycle layer 1-2-3-4-5-6-7-1 with 3-4 replaced by a
        // doubled 2-3 and 1-4 in place of 1-2 ... built as multigraph:
        // edges 2-3 (x2), 1-4, 4-5, 5-6, 6-7, 7-1
        let members: Vec<(usize, Vec<usize>)> = vec![
            (2, vec![3]),
            (2, vec![3]),
            (2, vec![3]),
            (2, vec![3]),
            (2, vec![3]),
            (2, vec![3]),
            (3, vec![5]),
        ];
        let hc = HubCollection::from_parts(7, 2, &members).unwrap();
        let l = Layer::new(vec![
            asg(2, 3, 1),
            asg(2, 3, 2),
            asg(1, 4, 3),
            asg(4, 5, 4),
            asg(5, 6, 5),
            asg(6, 7, 6),
            asg(1, 7, 7),
        ]);
        let out = disjointify_repair(&[l], &hc).unwrap();
        if let Some(f) = &out.factor {
            assert_eq!(verify_rainbow(f, hc.collection()), Ok(()));
        } else {
            assert_eq!(out.steps.last().unwrap().tag, RepairTag::Fallback);
        }
    }
    fn degrees(ws: &Workspace) -> Vec<usize> {
        let mut d = vec![0; ws.hc.n() + 1];
        for e in &ws.edge_of[1..] {
            d[e.lo()] += 1;
            d[e.hi()] += 1;
        }
        d
    }

    #[test]
    fn subcase21_through_other_hub() {
        let mut members = vec![(2, vec![3]); 6];
        members.push((3, vec![5]));
        let hc = HubCollection::from_parts(7, 2, &members).unwrap();
        let l = Layer::new(vec![
            asg(2, 3, 1),
            asg(2, 3, 2),
            asg(1, 4, 3),
            asg(4, 5, 4),
            asg(5, 6, 5),
            asg(6, 7, 6),
            asg(1, 7, 7),
        ]);
        let mut ws = Workspace::build(&[l], &hc).unwrap();
        let step = ws.hub_side(Edge::new(2, 3), true).expect("move applies");
        assert_eq!(step.tag, RepairTag::Subcase21);
        assert_eq!(ws.edge_of[2], Edge::new(1, 3));
        assert_eq!(ws.edge_of[7], Edge::new(2, 7));
        assert_eq!(ws.collision(), None);
        assert!(degrees(&ws)[1..].iter().all(|&d| d == 2));
    }

    /// Two Hamiltonian cycles on 9 vertices through a common edge at
    /// vertex 1, with most members hubbed at 1.
    fn doubled_cycles(id: u64) -> (HubCollection, Vec<Layer>, Edge) {
        use crate::experiments::generate::instance_rng;
        use rand::seq::{IndexedRandom, SliceRandom};
        use rand::Rng;

        let (n, k) = (9, 4);
        let mut rng = instance_rng(31, id);
        let mut rest: Vec<usize> = (2..=n).collect();
        rest.shuffle(&mut rng);
        let v = rest[0];
        let cycle =
            |order: &[usize]| -> Vec<Edge> { (0..n).map(|i| Edge::new(order[i], order[(i + 1) % n])).collect() };
        let c1: Vec<usize> = std::iter::once(1).chain(rest.iter().copied()).collect();
        let mut tail = rest[1..].to_vec();
        tail.shuffle(&mut rng);
        let c2: Vec<usize> = [1, v].into_iter().chain(tail).collect();
        let mut colors: Vec<usize> = (1..=2 * n).collect();
        colors.shuffle(&mut rng);
        let mut members = vec![(0, Vec::new()); 2 * n];
        let mut layers = Vec::new();
        let mut next = colors.into_iter();
        for edges in [cycle(&c1), cycle(&c2)] {
            let mut asg = Vec::new();
            for e in edges {
                let color = next.next().unwrap();
                let hub = if rng.random_bool(0.8) {
                    1
                } else {
                    rng.random_range(1..=n)
                };
                let mut b: Vec<usize> = e.other(hub).into_iter().collect();
                let pool: Vec<usize> = (1..=n).filter(|&x| x != hub && !b.contains(&x)).collect();
                b.extend(pool.choose_multiple(&mut rng, k - 1 - b.len()));
                b.sort_unstable();
                members[color - 1] = (hub, b);
                asg.push(Assignment { edge: e, color });
            }
            layers.push(Layer::new(asg));
        }
        let hc = HubCollection::from_parts(n, k, &members).unwrap();
        (hc, layers, Edge::new(1, v))
    }

    #[test]
    fn hub_side_moves_keep_degrees_and_shrink_the_collision() {
        let mut seen = BTreeMap::new();
        for id in 0..400 {
            let (hc, layers, e) = doubled_cycles(id);
            for fresh in [true, false] {
                let mut ws = Workspace::build(&layers, &hc).unwrap();
                let before = ws.mult(e);
                let Some(step) = ws.hub_side(e, fresh) else { continue };
                *seen.entry(step.tag).or_insert(0) += 1;
                assert_eq!(ws.mult(e), before - 1, "#{id}");
                assert!(degrees(&ws)[1..].iter().all(|&d| d == 4), "#{id}");
                for c in 1..=hc.len() {
                    assert!(hc.parts(c).contains(ws.edge_of[c]), "#{id} colour {c}");
                }
                let mut moved: Vec<usize> = step.changes.iter().map(|ch| ch.color).collect();
                moved.sort_unstable();
                moved.dedup();
                assert_eq!(moved.len(), step.changes.len());
            }
        }
        assert!(seen.contains_key(&RepairTag::Subcase21), "{seen:?}");
        assert!(seen.contains_key(&RepairTag::Subcase22), "{seen:?}");
    }
}
