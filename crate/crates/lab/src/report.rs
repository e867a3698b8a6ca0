//! Scenario reports: one record per checked claim.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thomason_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A declared cap was hit before the claim could be decided.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    pub version: String,
}

/// Caps that make a check undecided rather than failed.
fn is_cap(e: &Error) -> bool {
    matches!(
        e,
        Error::CapExceeded { .. }
            | Error::SizeCapExceeded { .. }
            | Error::SearchCapExceeded { .. }
            | Error::PathBudgetExceeded { .. }
    )
}

pub type Outcome = thomason_core::Result<(bool, Value)>;

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        Self { scenario: scenario.into(), checks: Vec::new(), elapsed_ms: 0, version: env!("CARGO_PKG_VERSION").into() }
    }

    pub fn record(&mut self, id: &str, anchor: &str, outcome: Outcome) {
        let (status, witness) = match outcome {
            Ok((true, w)) => (Status::Pass, w),
            Ok((false, w)) => (Status::Fail, w),
            Err(e) if is_cap(&e) => (Status::Unknown, json!({ "cap": e.to_string() })),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        self.checks.push(Check { id: id.into(), anchor: anchor.into(), status, witness });
    }

    pub fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self, allow_unknown: bool) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass || (allow_unknown && c.status == Status::Unknown))
    }

    /// The report with timing zeroed, for comparison against golden files.
    pub fn normalized(&self) -> Self {
        Self { elapsed_ms: 0, ..self.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {} ({} ms)\n", self.scenario, self.elapsed_ms);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Unknown => "unknown",
            };
            let _ = writeln!(out, "  {:<8} {:<36} {}", status, c.id, c.anchor);
            if c.status != Status::Pass {
                let _ = writeln!(out, "           witness: {}", c.witness);
            }
        }
        out
    }
}
