use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::generate::{
    colliding_instance, extremal_collection, instance_rng, random_hub_collection, random_supergraph_collection,
};
use super::{ExperimentReport, InstanceOutcome, Status};
use crate::error::ExperimentError;
use crate::exec::Exec;
use crate::factors::{
    find_rainbow_k_factor, rainbow_via_kelmans, verify_rainbow, RainbowFactor, SearchLimits, SearchOutcome,
};
use crate::graph::{emit_collection, emit_graph, hnk, lemma_family, GraphCollection, GraphFormat};
use crate::schedules::{disjointify_repair, rainbow_from_hub_collection, HubCollection, RepairTag};
use crate::spectral::{compare_radius, hnk_radius, rational_string, spectral_radius, DEFAULT_TOL};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HnkRow {
    pub n: usize,
    pub k: usize,
    pub lo: String,
    pub hi: String,
    pub lo_f64: f64,
    pub hi_f64: f64,
    /// `n-2 <= lo` and `hi < n-1`; always true for `k = 1`.
    pub sandwich: bool,
}

/// Certified enclosures of `rho(H_{n,k})` for `1 <= k <= k_max`,
/// `k < n <= n_max`.
pub fn hnk_table(
    n_max: usize,
    k_max: usize,
    precision: &BigRational,
    exec: Exec,
) -> Result<Vec<HnkRow>, ExperimentError> {
    let pairs: Vec<(usize, usize)> = (1..=k_max).flat_map(|k| (k + 1..=n_max).map(move |n| (n, k))).collect();
    exec.map(&pairs, |&(n, k)| {
        let iv = hnk_radius(n, k, precision)?;
        let floor = BigRational::from(BigInt::from(n as i64 - 2));
        let ceil = BigRational::from(BigInt::from(n as i64 - 1));
        let sandwich = k == 1 || (iv.lo >= floor && iv.hi < ceil);
        Ok(HnkRow {
            n,
            k,
            lo: rational_string(&iv.lo),
            hi: rational_string(&iv.hi),
            lo_f64: iv.lo_f64(),
            hi_f64: iv.hi_f64(),
            sandwich,
        })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaScan {
    pub k: RangeInclusive<usize>,
    pub n: RangeInclusive<usize>,
    /// Restricts `p`; the default is the full range `1..=ceil((n-k)/2)-1`.
    pub p: Option<RangeInclusive<usize>>,
}

/// Certifies `rho(family(n,k,p)) < rho(H_{n,k})` over the scan, for
/// `k >= 2` and `n >= 4k-1`.
pub fn check_lemma36(scan: &LemmaScan, exec: Exec) -> Result<ExperimentReport, ExperimentError> {
    let started = Instant::now();
    if *scan.k.start() < 2 {
        return Err(ExperimentError::Parameters(format!(
            "k must be at least 2, got {}",
            scan.k.start()
        )));
    }
    if let Some(p) = &scan.p {
        if *p.start() == 0 {
            return Err(ExperimentError::Parameters(
                "p = 0 is outside 1..=ceil((n-k)/2)-1".into(),
            ));
        }
    }
    let mut triples = Vec::new();
    for k in scan.k.clone() {
        for n in scan.n.clone().filter(|&n| n >= 4 * k - 1) {
            let p_max = (n - k).div_ceil(2) - 1;
            let (lo, hi) = scan
                .p
                .as_ref()
                .map_or((1, p_max), |p| (*p.start(), (*p.end()).min(p_max)));
            triples.extend((lo..=hi).map(|p| (n, k, p)));
        }
    }
    let instances = exec.map_range(0..triples.len(), |i| {
        let (n, k, p) = triples[i];
        lemma_instance(i as u64, n, k, p)
    });
    let instances = instances.into_iter().collect::<Result<Vec<_>, _>>()?;
    let params = json!({
        "k": [scan.k.start(), scan.k.end()],
        "n": [scan.n.start(), scan.n.end()],
        "p": scan.p.as_ref().map(|p| [p.start(), p.end()]),
    });
    Ok(ExperimentReport::assemble(
        "check-lemma36",
        None,
        params,
        instances,
        started,
    ))
}

fn lemma_instance(id: u64, n: usize, k: usize, p: usize) -> Result<InstanceOutcome, ExperimentError> {
    let g = lemma_family(n, k, p)?;
    let b: Vec<usize> = (1..k).collect();
    let h = hnk(n, k, n, &b)?;
    let ord = compare_radius(&g, &h);
    let cg = spectral_radius(&g, DEFAULT_TOL);
    let ch = spectral_radius(&h, DEFAULT_TOL);
    let diag = json!({
        "order": format!("{ord:?}"),
        "rho_family": [cg.enclosure.lo_f64(), cg.enclosure.hi_f64()],
        "rho_hnk": [ch.enclosure.lo_f64(), ch.enclosure.hi_f64()],
    });
    let params = json!({ "n": n, "k": k, "p": p });
    if ord == Ordering::Less {
        return Ok(InstanceOutcome::new(id, params, Status::Pass, diag));
    }
    let witness = json!({
        "family": emit_graph(&g, GraphFormat::Graph6)?,
        "hnk": emit_graph(&h, GraphFormat::Graph6)?,
        "family_certificate": cg,
        "hnk_certificate": ch,
    });
    Ok(InstanceOutcome::new(id, params, Status::Fail, diag).with_witness(witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremCase {
    /// Random labeled `H_{n,k}` copies, not all identical.
    A,
    /// Random proper supergraphs of labeled copies.
    B,
    /// The all-identical extremal collection.
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremRun {
    pub n: usize,
    pub k: usize,
    pub case: TheoremCase,
    /// Case C always has a single instance.
    pub samples: usize,
    pub seed: u64,
    pub limits: SearchLimits,
}

fn outcome_name<T>(o: &SearchOutcome<T>) -> &'static str {
    match o {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::NotFound => "not-found",
        SearchOutcome::Unknown => "unknown",
    }
}

/// Samples collections of the chosen case and checks them twice: by direct
/// exact search, and by searching the Kelmans-shifted collection and pulling
/// the factor back.
///
/// A collection of distinct `H_{n,k}` copies shifts to the extremal
/// collection, where no factor exists; the shifted route then pulls back
/// from the most shifted intermediate collection that has one, and the
/// instance records the stage.
pub fn check_theorem(run: &TheoremRun, exec: Exec) -> Result<ExperimentReport, ExperimentError> {
    let started = Instant::now();
    let TheoremRun { n, k, case, .. } = *run;
    if k == 0 || k * n % 2 == 1 {
        return Err(ExperimentError::Parameters(format!(
            "kn must be even with k >= 1, got n={n}, k={k}"
        )));
    }
    if n < 4 * k - 1 {
        return Err(ExperimentError::Parameters(format!("need n >= 4k-1, got n={n}, k={k}")));
    }
    let samples = if case == TheoremCase::C { 1 } else { run.samples };
    let instances = exec.map_range(0..samples, |i| theorem_instance(run, i as u64));
    let instances = instances.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut routes: BTreeMap<String, usize> = BTreeMap::new();
    for i in &instances {
        if let Some(r) = i.diagnostics["ko_route"].as_str() {
            *routes.entry(r.to_string()).or_default() += 1;
        }
    }
    let params = json!({ "n": n, "k": k, "case": case, "samples": samples, "node_cap": run.limits.node_cap });
    Ok(
        ExperimentReport::assemble("check-theorem", Some(run.seed), params, instances, started)
            .with_summary(json!({ "ko_routes": routes })),
    )
}

fn verified(f: &RainbowFactor, gc: &GraphCollection) -> Result<(), String> {
    verify_rainbow(f, gc).map_err(|v| v.to_string())
}

fn theorem_instance(run: &TheoremRun, id: u64) -> Result<InstanceOutcome, ExperimentError> {
    let (n, k) = (run.n, run.k);
    let mut rng = instance_rng(run.seed, id);
    let gc = match run.case {
        TheoremCase::A => random_hub_collection(&mut rng, n, k).collection().clone(),
        TheoremCase::B => random_supergraph_collection(&mut rng, n, k),
        TheoremCase::C => extremal_collection(n, k),
    };
    let expect_factor = run.case != TheoremCase::C;
    let params = json!({ "n": n, "k": k, "case": run.case });

    let direct = find_rainbow_k_factor(&gc, run.limits)?;
    let mut problems = Vec::new();
    let mut unknown = direct.is_unknown();
    match (&direct, expect_factor) {
        (SearchOutcome::Found(f), true) => {
            if let Err(e) = verified(f, &gc) {
                problems.push(format!("direct search returned an invalid factor: {e}"));
            }
        }
        (SearchOutcome::Found(_), false) => problems.push("direct search found a factor in the extremal case".into()),
        (SearchOutcome::NotFound, true) => problems.push("direct search found no factor".into()),
        _ => {}
    }

    let route = rainbow_via_kelmans(&gc, run.limits)?;
    unknown |= route.outcome.is_unknown();
    let mut ko_factor = None;
    let ko_route = match (&route.outcome, expect_factor) {
        (SearchOutcome::Found(f), _) => {
            ko_factor = Some(f.clone());
            match (expect_factor, route.stage == route.steps) {
                (true, true) => "pull-back",
                (true, false) => "partial-pull-back",
                (false, _) => "pull-back-in-extremal-case",
            }
        }
        (SearchOutcome::NotFound, _) => "not-found",
        (SearchOutcome::Unknown, _) => "unknown",
    };
    if expect_factor {
        match &ko_factor {
            Some(f) => {
                if let Err(e) = verified(f, &gc) {
                    problems.push(format!("shifted route returned an invalid factor: {e}"));
                }
            }
            None if !unknown => problems.push(format!("shifted route ended with {ko_route}")),
            None => {}
        }
    } else if ko_factor.is_some() {
        problems.push("shifted route found a factor in the extremal case".into());
    }

    let diag = json!({
        "direct": outcome_name(&direct),
        "ko_route": ko_route,
        "ko_steps": route.steps,
        "ko_stage": route.stage,
        "shifted_identical": route.shifted_identical,
        "problems": problems,
    });
    let status = if !problems.is_empty() {
        Status::Fail
    } else if unknown {
        Status::Unknown
    } else {
        Status::Pass
    };
    let out = InstanceOutcome::new(id, params, status, diag);
    Ok(if status == Status::Fail {
        let factor = direct.found().or(ko_factor);
        out.with_witness(json!({
            "collection": serde_json::from_str::<Value>(&emit_collection(&gc)).expect("emitted JSON parses"),
            "factor": factor,
        }))
    } else {
        out
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairSuite {
    /// Orders cycled through by instance id.
    pub ns: Vec<usize>,
    pub instances: usize,
    pub seed: u64,
    pub limits: SearchLimits,
}

/// Repairs seeded colliding-layer instances with `k = 2`, falling back to
/// exact search when repair gives up, and verifies every output.
pub fn repair_suite(suite: &RepairSuite, exec: Exec) -> Result<ExperimentReport, ExperimentError> {
    let started = Instant::now();
    if suite.ns.is_empty() || suite.ns.iter().any(|&n| n < 5) {
        return Err(ExperimentError::Parameters("every n must be at least 5".into()));
    }
    let instances = exec.map_range(0..suite.instances, |i| {
        let id = i as u64;
        repair_instance(suite, id, suite.ns[i % suite.ns.len()])
    });
    let instances = instances.into_iter().collect::<Result<Vec<_>, _>>()?;
    let repaired = instances
        .iter()
        .filter(|i| i.diagnostics["resolved_by"] == "repair")
        .count();
    let params = json!({ "k": 2, "ns": suite.ns, "instances": suite.instances });
    let summary = json!({
        "resolved_by_repair": repaired,
        "repair_rate": repaired as f64 / suite.instances.max(1) as f64,
    });
    Ok(ExperimentReport::assemble("repair-suite", Some(suite.seed), params, instances, started).with_summary(summary))
}

fn repair_instance(suite: &RepairSuite, id: u64, n: usize) -> Result<InstanceOutcome, ExperimentError> {
    let (hc, layers) = colliding_instance(&mut instance_rng(suite.seed, id), n);
    let out = disjointify_repair(&layers, &hc)?;
    let mut tags: BTreeMap<String, usize> = BTreeMap::new();
    for s in &out.steps {
        let tag = serde_json::to_value(s.tag).expect("tag serializes");
        *tags.entry(tag.as_str().unwrap_or_default().to_string()).or_default() += 1;
    }
    let (factor, resolved_by) = match out.factor.clone() {
        Some(f) => (SearchOutcome::Found(f), "repair"),
        None => (find_rainbow_k_factor(hc.collection(), suite.limits)?, "fallback"),
    };
    let params = json!({ "n": n, "k": 2 });
    let mut diag = json!({
        "resolved_by": resolved_by,
        "steps": out.steps.iter().filter(|s| s.tag != RepairTag::Fallback).count(),
        "tags": tags,
        "cap_hit": out.cap_hit,
    });
    let witness = |f: Option<&RainbowFactor>| {
        json!({
            "collection": serde_json::from_str::<Value>(&emit_collection(hc.collection())).expect("emitted JSON parses"),
            "layers": layers,
            "factor": f,
        })
    };
    Ok(match &factor {
        SearchOutcome::Found(f) => match verified(f, hc.collection()) {
            Ok(()) => InstanceOutcome::new(id, params, Status::Pass, diag),
            Err(e) => {
                diag["problem"] = json!(e);
                InstanceOutcome::new(id, params, Status::Fail, diag).with_witness(witness(Some(f)))
            }
        },
        SearchOutcome::NotFound => {
            diag["problem"] = json!("no rainbow factor exists for this collection");
            InstanceOutcome::new(id, params, Status::Fail, diag).with_witness(witness(None))
        }
        SearchOutcome::Unknown => InstanceOutcome::new(id, params, Status::Unknown, diag),
    })
}

/// Helper for the hub pipeline on a given collection, used by the CLI.
pub fn hub_pipeline(gc: GraphCollection, limits: SearchLimits) -> Result<Value, ExperimentError> {
    let hc = HubCollection::new(gc)?;
    let out = rainbow_from_hub_collection(&hc, limits)?;
    Ok(json!({
        "route": out.route,
        "groups": out.groups,
        "repair_steps": out.repair.map(|r| r.steps),
        "factor": out.outcome.found(),
    }))
}
