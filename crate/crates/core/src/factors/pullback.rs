//! Turning a rainbow factor of `KO_uv(G)` into one of `G`.
//!
//! An assignment `e_r = uw` that is not an edge of `G_r` must have been
//! moved, so `vw ∈ G_r`. If `vw` is in the factor with colour `s`, the two
//! colours trade edges. Otherwise some `vw'` in the factor (colour `t`) has
//! `uw'` outside it, and `e_r = vw`, `e_t = uw'` replace `uw`, `vw'`.
//! Each step fixes one assignment and breaks none.

use super::{verify_rainbow, Assignment, RainbowFactor, SearchLimits, SearchOutcome};
use crate::error::FactorError;
use crate::graph::{Edge, GraphCollection, LabeledGraph};
use crate::kelmans::{ko_collection_steps, ko_pair, KelmansStep};

pub fn pull_back(f: &RainbowFactor, gc: &GraphCollection, u: usize, v: usize) -> Result<RainbowFactor, FactorError> {
    let shifted = gc
        .graphs()
        .iter()
        .map(|g| ko_pair(g, u, v).map(|t| t.result))
        .collect::<Result<Vec<_>, _>>()?;
    let shifted = GraphCollection::new(gc.k(), shifted)?;
    verify_rainbow(f, &shifted).map_err(|e| FactorError::InvalidInput(e.to_string()))?;

    let n = gc.n();
    let mut edge_of: Vec<Edge> = vec![Edge::new(1, 2); gc.len() + 1];
    let mut color_of = vec![0usize; (n + 1) * (n + 1)];
    for a in &f.assignments {
        edge_of[a.color] = a.edge;
        color_of[a.edge.lo() * (n + 1) + a.edge.hi()] = a.color;
    }
    let idx = |e: Edge| e.lo() * (n + 1) + e.hi();
    let mut factor = f.graph(n)?;
    let mut touched = vec![false; gc.len() + 1];

    let cap = f.k * n;
    let mut steps = 0;
    while let Some(r) = (1..=gc.len()).find(|&r| !gc.contains(r, edge_of[r])) {
        if steps == cap {
            return Err(FactorError::IterationCap(cap));
        }
        steps += 1;
        let er = edge_of[r];
        let w = er
            .other(u)
            .ok_or_else(|| FactorError::PullBackStuck(format!("{er} (color {r}) does not contain {u}")))?;
        let vw = Edge::new(v, w);
        let s = color_of[idx(vw)];
        if s != 0 {
            edge_of[r] = vw;
            edge_of[s] = er;
            color_of[idx(vw)] = r;
            color_of[idx(er)] = s;
            touched[r] = true;
            touched[s] = true;
            continue;
        }
        let w2 = factor
            .neighbors(v)
            .find(|&x| x != u && !factor.has_edge(u, x) && !touched[color_of[idx(Edge::new(v, x))]])
            .ok_or_else(|| FactorError::PullBackStuck(format!("no rewiring partner for {er}")))?;
        let vw2 = Edge::new(v, w2);
        let uw2 = Edge::new(u, w2);
        let t = color_of[idx(vw2)];
        rewire(&mut factor, er, vw);
        rewire(&mut factor, vw2, uw2);
        color_of[idx(er)] = 0;
        color_of[idx(vw2)] = 0;
        color_of[idx(vw)] = r;
        color_of[idx(uw2)] = t;
        edge_of[r] = vw;
        edge_of[t] = uw2;
        touched[r] = true;
        touched[t] = true;
    }

    let out = RainbowFactor::new(
        f.k,
        (1..=gc.len())
            .map(|c| Assignment {
                edge: edge_of[c],
                color: c,
            })
            .collect(),
    );
    verify_rainbow(&out, gc).map_err(|e| FactorError::PullBackStuck(e.to_string()))?;
    Ok(out)
}

fn rewire(g: &mut LabeledGraph, old: Edge, new: Edge) {
    g.remove_edge(old.lo(), old.hi()).expect("present");
    g.add_edge(new.lo(), new.hi()).expect("in range");
}

/// Pulls a factor of the final collection of `steps` back through every
/// step, last step first.
pub fn pull_back_chain(f: &RainbowFactor, steps: &[KelmansStep]) -> Result<RainbowFactor, FactorError> {
    let mut cur = f.clone();
    for step in steps.iter().rev() {
        let (u, v) = step.pair;
        cur = pull_back(&cur, &step.before, u, v)?;
    }
    Ok(cur)
}

/// What happened on the Kelmans route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KelmansRoute {
    /// Number of collection-wide `KO_uv` applications.
    pub steps: usize,
    /// Whether the transformed collection is a single graph repeated.
    pub shifted_identical: bool,
    /// How many of the steps were applied to the collection the factor was
    /// found in; equals `steps` when the fixed point has a factor.
    pub stage: usize,
    pub outcome: SearchOutcome<RainbowFactor>,
}

/// Shifts the whole collection to its Kelmans fixed point, searches there,
/// and pulls any factor found back to `gc`.
///
/// If the fixed point has none, the intermediate collections are searched
/// from the most shifted one down to the one after the first step, and the
/// first factor found is pulled back through the steps before it. The
/// unshifted collection itself is never searched here.
pub fn rainbow_via_kelmans(gc: &GraphCollection, limits: SearchLimits) -> Result<KelmansRoute, FactorError> {
    gc.check_factor_size()?;
    let (shifted, steps) = ko_collection_steps(gc);
    let route = |stage, outcome| KelmansRoute {
        steps: steps.len(),
        shifted_identical: shifted.all_identical(),
        stage,
        outcome,
    };
    let mut unknown = false;
    match super::find_rainbow_k_factor(&shifted, limits)? {
        SearchOutcome::Found(f) => {
            return Ok(route(steps.len(), SearchOutcome::Found(pull_back_chain(&f, &steps)?)));
        }
        SearchOutcome::Unknown => unknown = true,
        SearchOutcome::NotFound => {}
    }
    for stage in (1..steps.len()).rev() {
        match super::find_rainbow_k_factor(&steps[stage].before, limits)? {
            SearchOutcome::Found(f) => {
                return Ok(route(
                    stage,
                    SearchOutcome::Found(pull_back_chain(&f, &steps[..stage])?),
                ));
            }
            SearchOutcome::Unknown => unknown = true,
            SearchOutcome::NotFound => {}
        }
    }
    let outcome = if unknown {
        SearchOutcome::Unknown
    } else {
        SearchOutcome::NotFound
    };
    Ok(route(0, outcome))
}
