//! Explicit rainbow factor schedules, closure membership, hub-based factors
//! for collections of `H_{n,k}` copies, and the collision repair that glues
//! per-group factors together.

pub mod hub;
pub mod pipeline;
pub mod repair;

use serde::{Deserialize, Serialize};

pub use hub::{decompose_hnk, hub_factor, HubCollection, HubParts};
pub use pipeline::{rainbow_from_hub_collection, PipelineOutcome, PipelineRoute};
pub use repair::{disjointify_repair, Layer, RepairOutcome, RepairStep, RepairTag};

use crate::error::ScheduleError;
use crate::factors::{Assignment, RainbowFactor};
use crate::graph::{Edge, LabeledGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub i: usize,
    pub j: usize,
    pub edge: Edge,
}

/// Edges `e_{i,j}` of a k-regular graph, each tied to the collection member
/// `color(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub n: usize,
    pub k: usize,
    pub parity: Parity,
    pub entries: Vec<ScheduleEntry>,
}

impl Schedule {
    /// Row-major member index: `(i-1)n/2 + j` for even `n`;
    /// `(i-1)(n-1)/2 + j` for odd `n` and `i >= 1`, with row 0 after row `k`.
    pub fn color(&self, i: usize, j: usize) -> usize {
        match self.parity {
            Parity::Even => (i - 1) * self.n / 2 + j,
            Parity::Odd if i == 0 => self.k * (self.n - 1) / 2 + j,
            Parity::Odd => (i - 1) * (self.n - 1) / 2 + j,
        }
    }

    /// The one entry allowed outside the closure; it must be `{k, n}`.
    pub fn special(&self) -> (usize, usize) {
        match self.parity {
            Parity::Even => (self.k, self.k),
            Parity::Odd => (self.k, self.k - 1),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<Edge> {
        self.entries.iter().find(|e| e.i == i && e.j == j).map(|e| e.edge)
    }

    pub fn graph(&self) -> Result<LabeledGraph, ScheduleError> {
        let mut g = LabeledGraph::try_empty(self.n)?;
        for e in &self.entries {
            if g.contains_edge(e.edge) {
                return Err(ScheduleError::MalformedLayers(format!("edge {} repeats", e.edge)));
            }
            g.add_edge(e.edge.lo(), e.edge.hi())?;
        }
        Ok(g)
    }

    /// Exactly `kn/2` distinct edges and every degree equal to `k`.
    pub fn is_k_regular(&self) -> bool {
        self.entries.len() * 2 == self.k * self.n
            && self.graph().is_ok_and(|g| (1..=self.n).all(|v| g.degree(v) == self.k))
    }

    pub fn as_factor(&self) -> RainbowFactor {
        RainbowFactor::new(
            self.k,
            self.entries
                .iter()
                .map(|e| Assignment {
                    edge: e.edge,
                    color: self.color(e.i, e.j),
                })
                .collect(),
        )
    }
}

fn check_range(n: usize, k: usize, limit: usize) -> Result<(), ScheduleError> {
    if k == 0 || k > limit {
        return Err(ScheduleError::Precondition(format!(
            "the schedule formulas need 1 <= k <= {limit} for n = {n}, got k = {k}"
        )));
    }
    Ok(())
}

/// `e_{i,j} = {j, n/2+i-j}` for `j < i`, `{j, n+i-j}` for `i <= j <= n/2`.
///
/// The formulas yield a simple k-regular graph exactly when `k <= n/2`;
/// larger `k` is rejected.
pub fn even_schedule(n: usize, k: usize) -> Result<Schedule, ScheduleError> {
    if n % 2 == 1 {
        return Err(ScheduleError::Parity(format!("even schedule needs even n, got {n}")));
    }
    check_range(n, k, n / 2)?;
    let half = n / 2;
    let mut entries = Vec::with_capacity(k * half);
    for i in 1..=k {
        for j in 1..=half {
            let other = if j < i { half + i - j } else { n + i - j };
            entries.push(ScheduleEntry {
                i,
                j,
                edge: Edge::new(j, other),
            });
        }
    }
    Ok(Schedule {
        n,
        k,
        parity: Parity::Even,
        entries,
    })
}

/// Row 0: `{1, (n+1)/2}` then `{2j-2, 2j-1}`; rows `i >= 1` by the first
/// matching branch of: `i = 1`; `i >= 2, j >= i-1`; `i >= 3, j <= i-2`.
///
/// Valid for `k <= (n-1)/2`; larger `k` is rejected.
pub fn odd_schedule(n: usize, k: usize) -> Result<Schedule, ScheduleError> {
    if n % 2 == 0 {
        return Err(ScheduleError::Parity(format!("odd schedule needs odd n, got {n}")));
    }
    if k % 2 == 1 {
        return Err(ScheduleError::Parity(format!("odd n needs even k, got {k}")));
    }
    check_range(n, k, (n - 1) / 2)?;
    let half = (n - 1) / 2;
    let mut entries = Vec::with_capacity(k * n / 2);
    entries.push(ScheduleEntry {
        i: 0,
        j: 1,
        edge: Edge::new(1, half + 1),
    });
    for j in 2..=k / 2 {
        entries.push(ScheduleEntry {
            i: 0,
            j,
            edge: Edge::new(2 * j - 2, 2 * j - 1),
        });
    }
    for i in 1..=k {
        for j in 1..=half {
            let (a, b) = if i == 1 {
                (j, n + 1 - j)
            } else if j + 1 >= i {
                (j + 1, n + i - 1 - j)
            } else {
                (j, half + i - j)
            };
            entries.push(ScheduleEntry {
                i,
                j,
                edge: Edge::new(a, b),
            });
        }
    }
    Ok(Schedule {
        n,
        k,
        parity: Parity::Odd,
        entries,
    })
}

/// Whether `{a, b}` lies in every shift-stable member forced to contain
/// `{i, n}` for `i < k` and `{k+i, n-i}` for `1 <= i <= ceil((n-k)/2) - 1`.
pub fn closure_member(edge: Edge, n: usize, k: usize) -> bool {
    let (a, b) = (edge.lo(), edge.hi());
    if b > n {
        return false;
    }
    if a < k {
        return true;
    }
    let top = (n - k).div_ceil(2).saturating_sub(1);
    let lo = a.saturating_sub(k).max(1);
    let hi = (n - b).min(top);
    lo <= hi
}

/// Every entry but the special one is a closure member, and the special
/// entry is `{k, n}`.
pub fn schedule_certifies(s: &Schedule) -> bool {
    let special = s.special();
    let kn = Edge::new(s.k, s.n);
    s.entries.iter().all(|e| {
        if (e.i, e.j) == special {
            e.edge == kn
        } else {
            closure_member(e.edge, s.n, s.k)
        }
    }) && s.entry(special.0, special.1).is_some()
}
