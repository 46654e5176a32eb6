//! Collections of labeled `H_{n,k}` copies and rainbow factors built around
//! a shared hub.

use serde::{Deserialize, Serialize};

use crate::error::ScheduleError;
use crate::factors::{find_k_factor, Assignment, RainbowFactor};
use crate::graph::{Edge, GraphCollection, LabeledGraph};

/// Hub, its `k-1` neighbours `b`, and the remaining vertices `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HubParts {
    pub hub: usize,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl HubParts {
    /// Membership test that only looks at the decomposition.
    pub fn contains(&self, e: Edge) -> bool {
        match e.other(self.hub) {
            Some(x) => self.b.contains(&x),
            None => true,
        }
    }
}

/// Recovers the hub and clique part of a labeled `H_{n,k}`.
///
/// `k = n-1` is rejected because every non-edge endpoint would qualify as hub.
pub fn decompose_hnk(g: &LabeledGraph, k: usize) -> Result<HubParts, ScheduleError> {
    let n = g.n();
    if k == 0 || k + 1 >= n {
        return Err(ScheduleError::NotHnk(format!(
            "the hub is only determined for 1 <= k <= n-2, got n={n}, k={k}"
        )));
    }
    let expected = (n - 1) * (n - 2) / 2 + k - 1;
    if g.edge_count() != expected {
        return Err(ScheduleError::NotHnk(format!(
            "{} edges, expected {expected}",
            g.edge_count()
        )));
    }
    let low: Vec<usize> = (1..=n).filter(|&v| g.degree(v) == k - 1).collect();
    let [hub] = low[..] else {
        return Err(ScheduleError::NotHnk(format!(
            "{} vertices of degree {}, expected exactly one",
            low.len(),
            k - 1
        )));
    };
    // with the edge count fixed, a full clique on the rest forces the shape
    for a in (1..=n).filter(|&v| v != hub) {
        if let Some(b) = (a + 1..=n).find(|&b| b != hub && !g.has_edge(a, b)) {
            return Err(ScheduleError::NotHnk(format!("{{{a},{b}}} missing outside the hub")));
        }
    }
    let b: Vec<usize> = g.neighbors(hub).collect();
    let c = (1..=n).filter(|&v| v != hub && !b.contains(&v)).collect();
    Ok(HubParts { hub, b, c })
}

/// A collection whose members are all labeled `H_{n,k}` copies.
#[derive(Clone, Debug)]
pub struct HubCollection {
    gc: GraphCollection,
    parts: Vec<HubParts>,
}

impl HubCollection {
    pub fn new(gc: GraphCollection) -> Result<Self, ScheduleError> {
        let k = gc.k();
        let parts = gc
            .graphs()
            .iter()
            .enumerate()
            .map(|(i, g)| decompose_hnk(g, k).map_err(|e| ScheduleError::NotHnk(format!("member {}: {e}", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HubCollection { gc, parts })
    }

    /// Builds `H_{n,k}` copies from `(hub, clique part)` pairs.
    pub fn from_parts(n: usize, k: usize, members: &[(usize, Vec<usize>)]) -> Result<Self, ScheduleError> {
        let graphs = members
            .iter()
            .map(|(hub, b)| crate::graph::hnk(n, k, *hub, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(GraphCollection::new(k, graphs)?)
    }

    pub fn collection(&self) -> &GraphCollection {
        &self.gc
    }

    pub fn n(&self) -> usize {
        self.gc.n()
    }

    pub fn k(&self) -> usize {
        self.gc.k()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts of the 1-based member `color`.
    pub fn parts(&self, color: usize) -> &HubParts {
        &self.parts[color - 1]
    }

    pub fn hub(&self, color: usize) -> usize {
        self.parts[color - 1].hub
    }
}

/// Rainbow `d`-factor on the members `colors`, which must share one hub
/// and number `dn/2`.
///
/// Picks distinct `v_i` in the members' clique parts, finds a `d`-factor of
/// the graph where everything but the hub is a clique and the hub sees only
/// the `v_i`, gives `{hub, v_i}` to its member and the other edges to the
/// remaining members in index order.
pub(crate) fn hub_layer(hc: &HubCollection, colors: &[usize], d: usize) -> Result<Vec<Assignment>, ScheduleError> {
    let n = hc.n();
    if colors.len() * 2 != d * n {
        return Err(ScheduleError::Precondition(format!(
            "{} members cannot carry a {d}-factor on {n} vertices",
            colors.len()
        )));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let hub = hc.hub(colors[0]);
    if let Some(&c) = colors.iter().find(|&&c| hc.hub(c) != hub) {
        return Err(ScheduleError::Precondition(format!(
            "member {c} has hub {} instead of {hub}",
            hc.hub(c)
        )));
    }

    let reps = representatives(hc, colors, d).ok_or(ScheduleError::NoRepresentatives(d))?;
    let mut aux = LabeledGraph::try_empty(n)?;
    for a in (1..=n).filter(|&v| v != hub) {
        for b in (a + 1..=n).filter(|&v| v != hub) {
            aux.add_edge(a, b)?;
        }
    }
    for &(_, v) in &reps {
        aux.add_edge(hub, v)?;
    }
    let factor = find_k_factor(&aux, d)?.ok_or(ScheduleError::NoFactor(d))?;

    let mut out: Vec<Assignment> = reps
        .iter()
        .map(|&(color, v)| Assignment {
            edge: Edge::new(hub, v),
            color,
        })
        .collect();
    let mut rest = colors.iter().copied().filter(|c| reps.iter().all(|r| r.0 != *c));
    for e in factor.edges().into_iter().filter(|e| !e.contains(hub)) {
        let color = rest.next().expect("edge count matches member count");
        out.push(Assignment { edge: e, color });
    }
    Ok(out)
}

/// Distinct representatives `(color, v)` with `v` in the member's clique
/// part, grown by augmenting paths over members in index order until `d`
/// are matched.
fn representatives(hc: &HubCollection, colors: &[usize], d: usize) -> Option<Vec<(usize, usize)>> {
    let n = hc.n();
    let mut owner: Vec<Option<usize>> = vec![None; n + 1];
    let mut matched = 0;

    fn augment(hc: &HubCollection, colors: &[usize], i: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &hc.parts(colors[i]).b {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            if owner[v].is_none_or(|j| augment(hc, colors, j, seen, owner)) {
                owner[v] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..colors.len() {
        if matched == d {
            break;
        }
        let mut seen = vec![false; n + 1];
        if augment(hc, colors, i, &mut seen, &mut owner) {
            matched += 1;
        }
    }
    if matched < d {
        return None;
    }
    let mut reps: Vec<(usize, usize)> = (1..=n).filter_map(|v| owner[v].map(|i| (colors[i], v))).collect();
    reps.sort_unstable();
    Some(reps)
}

/// Rainbow k-factor of a collection of `H_{n,k}` copies sharing one hub,
/// not all identical.
pub fn hub_factor(hc: &HubCollection) -> Result<RainbowFactor, ScheduleError> {
    hc.collection().check_factor_size()?;
    if hc.collection().all_identical() {
        return Err(ScheduleError::Precondition(
            "all members are identical, so no rainbow factor exists".into(),
        ));
    }
    let colors: Vec<usize> = (1..=hc.len()).collect();
    Ok(RainbowFactor::new(hc.k(), hub_layer(hc, &colors, hc.k())?))
}
