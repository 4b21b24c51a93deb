//! Data-driven verification scenarios: a named set of distribution
//! descriptors and bound requests whose results are compared against
//! expected values, each carrying a provenance tag.

use serde::{Deserialize, Serialize};

use limitbounds::lattice::DistSpec;

use crate::ops::{eval_op, BoundParams};
use crate::report::{Check, Provenance};

#[derive(Deserialize)]
pub struct Scenario {
    pub id: String,
    /// Distribution descriptors referenced by the scenario (kept for
    /// reports even when a request only needs moments).
    #[serde(default)]
    pub distributions: Vec<DistSpec>,
    pub requests: Vec<BoundRequest>,
}

#[derive(Deserialize)]
pub struct BoundRequest {
    pub op: String,
    #[serde(default)]
    pub params: BoundParams,
    pub expected: Vec<Expected>,
}

#[derive(Serialize, Deserialize)]
pub struct Expected {
    /// Result field the expectation applies to (default `value`).
    #[serde(default = "default_field")]
    pub field: String,
    pub value: f64,
    pub tolerance: f64,
    pub provenance: Provenance,
}

fn default_field() -> String {
    "value".to_string()
}

impl Scenario {
    /// Runs every request and compares against the expectations.
    pub fn run(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        for req in &self.requests {
            match eval_op(&req.op, &req.params) {
                Ok(result) => {
                    for exp in &req.expected {
                        match result.get(&exp.field).and_then(|v| v.as_f64()) {
                            Some(computed) => checks.push(Check::close(
                                format!("{}: {}.{}", self.id, req.op, exp.field),
                                computed,
                                exp.value,
                                exp.tolerance,
                                exp.provenance,
                            )),
                            None => checks.push(Check::boolean(
                                format!(
                                    "{}: {} produced no numeric field `{}`",
                                    self.id, req.op, exp.field
                                ),
                                false,
                                exp.provenance,
                            )),
                        }
                    }
                }
                Err(e) => checks.push(Check::boolean(
                    format!("{}: {} failed: {e}", self.id, req.op),
                    false,
                    Provenance::Derived,
                )),
            }
        }
        checks
    }
}

/// The built-in scenarios exercised by the `examples` suite; each
/// expected value is pinned with its provenance.
pub fn builtin_scenarios() -> Vec<Scenario> {
    let text = include_str!("../data/scenarios.json");
    serde_json::from_str(text).expect("embedded scenarios must parse")
}

/// Runs all built-in scenarios.
pub fn run_builtin() -> Vec<Check> {
    builtin_scenarios().iter().flat_map(Scenario::run).collect()
}
