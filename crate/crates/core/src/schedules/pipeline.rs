//! Rainbow k-factors of `H_{n,k}` collections with several hubs.
//!
//! Members are grouped by hub. Each group gives a hub layer on as many
//! whole blocks of its members as it can (`n/2` members per degree for even
//! `n`, `n` members per two degrees for odd `n`). The leftover members are
//! cut into blocks in index order; each block mixes hubs and carries a
//! rainbow perfect matching (even `n`) or Hamiltonian cycle (odd `n`).
//! Repeated pairs across layers are then repaired, and an exact search
//! covers the rare case where no repair move applies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hub::{hub_factor, hub_layer, HubCollection};
use super::repair::{disjointify_repair, Layer, RepairOutcome};
use crate::error::ScheduleError;
use crate::factors::{
    find_rainbow_hamiltonian_cycle, find_rainbow_k_factor, find_rainbow_perfect_matching, Assignment, RainbowFactor,
    SearchLimits, SearchOutcome,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineRoute {
    /// Every member shares one hub.
    SingleHub,
    /// Layers plus repair.
    Layers,
    /// Direct search on the whole collection.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub route: PipelineRoute,
    pub outcome: SearchOutcome<RainbowFactor>,
    /// `(hub, member count)`, largest group first.
    pub groups: Vec<(usize, usize)>,
    pub layers: Vec<Layer>,
    pub repair: Option<RepairOutcome>,
}

/// Members grouped by hub, largest group first, ties by hub label.
fn hub_groups(hc: &HubCollection) -> Vec<(usize, Vec<usize>)> {
    let mut by_hub: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 1..=hc.len() {
        by_hub.entry(hc.hub(c)).or_default().push(c);
    }
    let mut groups: Vec<_> = by_hub.into_iter().collect();
    groups.sort_by_key(|(hub, cs)| (std::cmp::Reverse(cs.len()), *hub));
    groups
}

fn block_layer(hc: &HubCollection, block: &[usize], limits: SearchLimits) -> Result<Option<Layer>, ScheduleError> {
    let n = hc.n();
    let sub = hc.collection().select(block, if n % 2 == 0 { 1 } else { 2 });
    let found = if n % 2 == 0 {
        find_rainbow_perfect_matching(&sub, limits)?
    } else {
        find_rainbow_hamiltonian_cycle(&sub, limits)?
    };
    Ok(found.found().map(|f| {
        Layer::new(
            f.assignments
                .iter()
                .map(|a| Assignment {
                    edge: a.edge,
                    color: block[a.color - 1],
                })
                .collect(),
        )
    }))
}

/// Layers for a collection with at least two hubs, or `None` when a block
/// search comes back empty.
fn build_layers(
    hc: &HubCollection,
    groups: &[(usize, Vec<usize>)],
    limits: SearchLimits,
) -> Result<Option<Vec<Layer>>, ScheduleError> {
    let n = hc.n();
    let (unit, per_unit) = if n % 2 == 0 { (n / 2, 1) } else { (n, 2) };
    let mut layers = Vec::new();
    let mut rest = Vec::new();
    for (_, colors) in groups {
        let blocks = colors.len() / unit;
        let (used, left) = colors.split_at(blocks * unit);
        if blocks > 0 {
            match hub_layer(hc, used, blocks * per_unit) {
                Ok(a) => layers.push(Layer::new(a)),
                Err(ScheduleError::NoRepresentatives(_) | ScheduleError::NoFactor(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        rest.extend_from_slice(left);
    }
    rest.sort_unstable();
    for block in rest.chunks(unit) {
        match block_layer(hc, block, limits)? {
            Some(l) => layers.push(l),
            None => return Ok(None),
        }
    }
    Ok(Some(layers))
}

/// Rainbow k-factor of a collection of `H_{n,k}` copies that are not all
/// identical.
pub fn rainbow_from_hub_collection(hc: &HubCollection, limits: SearchLimits) -> Result<PipelineOutcome, ScheduleError> {
    let gc = hc.collection();
    gc.check_factor_size()?;
    if gc.all_identical() {
        return Err(ScheduleError::Precondition(
            "all members are identical, so no rainbow factor exists".into(),
        ));
    }
    let groups = hub_groups(hc);
    let sizes = groups.iter().map(|(h, cs)| (*h, cs.len())).collect();
    if groups.len() == 1 {
        return Ok(PipelineOutcome {
            route: PipelineRoute::SingleHub,
            outcome: SearchOutcome::Found(hub_factor(hc)?),
            groups: sizes,
            layers: Vec::new(),
            repair: None,
        });
    }

    let layers = build_layers(hc, &groups, limits)?;
    let repair = match &layers {
        Some(ls) => Some(disjointify_repair(ls, hc)?),
        None => None,
    };
    if let Some(f) = repair.as_ref().and_then(|r| r.factor.clone()) {
        return Ok(PipelineOutcome {
            route: PipelineRoute::Layers,
            outcome: SearchOutcome::Found(f),
            groups: sizes,
            layers: layers.unwrap_or_default(),
            repair,
        });
    }
    Ok(PipelineOutcome {
        route: PipelineRoute::Fallback,
        outcome: find_rainbow_k_factor(gc, limits)?,
        groups: sizes,
        layers: layers.unwrap_or_default(),
        repair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::verify_rainbow;

    fn check(n: usize, k: usize, members: &[(usize, Vec<usize>)]) -> PipelineOutcome {
        let hc = HubCollection::from_parts(n, k, members).unwrap();
        let out = rainbow_from_hub_collection(&hc, SearchLimits::default()).unwrap();
        let f = out.outcome.clone().found().expect("factor");
        assert_eq!(verify_rainbow(&f, hc.collection()), Ok(()));
        out
    }

    #[test]
    fn single_hub() {
        let members: Vec<_> = (0..7).map(|i| (7, vec![1 + i % 2])).collect();
        assert_eq!(check(7, 2, &members).route, PipelineRoute::SingleHub);
    }

    #[test]
    fn two_hubs_even() {
        let mut members: Vec<_> = (0..5).map(|_| (8, vec![1])).collect();
        members.extend((0..3).map(|_| (1, vec![2])));
        let out = check(8, 2, &members);
        assert_eq!(out.groups, vec![(8, 5), (1, 3)]);
        assert_ne!(out.route, PipelineRoute::SingleHub);
    }

    #[test]
    fn mixed_hubs_odd() {
        let members: Vec<_> = (1..=9).map(|i| (1 + i % 3, vec![5])).collect();
        check(9, 2, &members);
    }

    #[test]
    fn three_hubs_k3() {
        let members: Vec<_> = (0..18).map(|i| (10 + i % 3, vec![1, 2 + i % 4])).collect();
        let out = check(12, 3, &members);
        assert_eq!(out.route, PipelineRoute::Layers);
    }

    #[test]
    fn identical_rejected() {
        let hc = HubCollection::from_parts(7, 2, &vec![(3, vec![1]); 7]).unwrap();
        assert!(rainbow_from_hub_collection(&hc, SearchLimits::default()).is_err());
    }
}
