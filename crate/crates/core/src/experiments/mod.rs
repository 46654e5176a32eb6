//! Batch experiments with deterministic, seed-addressed instances.
//!
//! Every experiment returns an [`ExperimentReport`]. Instances are built
//! from `(seed, instance id)` alone and run through an [`Exec`], so the
//! report is the same in sequential and parallel mode apart from the
//! wall-clock field.
//!
//! [`Exec`]: crate::exec::Exec

pub mod generate;
pub mod runs;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use runs::{
    check_lemma36, check_theorem, hnk_table, repair_suite, HnkRow, LemmaScan, RepairSuite, TheoremCase, TheoremRun,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub id: u64,
    pub params: Value,
    pub status: Status,
    pub diagnostics: Value,
    /// Present on every `Fail`: the data a library predicate rejects.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl InstanceOutcome {
    pub fn new(id: u64, params: Value, status: Status, diagnostics: Value) -> Self {
        InstanceOutcome {
            id,
            params,
            status,
            diagnostics,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: Option<u64>,
    pub parameters: Value,
    pub instances: Vec<InstanceOutcome>,
    pub counts: Counts,
    /// Experiment-specific aggregates.
    pub summary: Value,
    pub wall_clock_ms: f64,
}

impl ExperimentReport {
    /// Sorts instances by id and tallies them.
    pub fn assemble(
        experiment: &str,
        seed: Option<u64>,
        parameters: Value,
        mut instances: Vec<InstanceOutcome>,
        started: Instant,
    ) -> Self {
        instances.sort_by_key(|i| i.id);
        let mut counts = Counts::default();
        for i in &instances {
            match i.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Unknown => counts.unknown += 1,
            }
        }
        ExperimentReport {
            experiment: experiment.to_string(),
            seed,
            parameters,
            instances,
            counts,
            summary: Value::Null,
            wall_clock_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn with_summary(mut self, summary: Value) -> Self {
        self.summary = summary;
        self
    }

    pub fn passed(&self) -> bool {
        self.counts.fail == 0
    }

    pub fn all_pass(&self) -> bool {
        self.counts.fail == 0 && self.counts.unknown == 0
    }

    /// One line per instance, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            let mut line = json!({ "experiment": self.experiment });
            if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut line, serde_json::to_value(i)) {
                dst.extend(src);
            }
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let summary = json!({
            "experiment": self.experiment,
            "seed": self.seed,
            "parameters": self.parameters,
            "counts": self.counts,
            "summary": self.summary,
            "wall_clock_ms": self.wall_clock_ms,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}
