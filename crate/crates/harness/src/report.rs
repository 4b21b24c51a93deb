//! Check and report records produced by the verification suites.

use serde::{Deserialize, Serialize};

/// Where an expected value comes from: echoed from a published table,
/// forced by definition/arithmetic, or produced by an independent
/// oracle computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub computed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub tolerance: f64,
    /// Slack left inside the requirement; negative means failure.
    pub margin: f64,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Check {
    /// computed must equal expected within tolerance.
    pub fn close(
        id: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
        provenance: Provenance,
    ) -> Self {
        let margin = tolerance - (computed - expected).abs();
        Check {
            id: id.into(),
            computed,
            expected: Some(expected),
            tolerance,
            margin,
            pass: margin >= 0.0,
            provenance,
        }
    }

    /// computed (e.g. a worst violation or worst margin) must be at
    /// least `floor`.
    pub fn at_least(
        id: impl Into<String>,
        computed: f64,
        floor: f64,
        provenance: Provenance,
    ) -> Self {
        let margin = computed - floor;
        Check {
            id: id.into(),
            computed,
            expected: Some(floor),
            tolerance: 0.0,
            margin,
            pass: margin >= 0.0,
            provenance,
        }
    }

    /// computed must be at most `cap`.
    pub fn at_most(id: impl Into<String>, computed: f64, cap: f64, provenance: Provenance) -> Self {
        let margin = cap - computed;
        Check {
            id: id.into(),
            computed,
            expected: Some(cap),
            tolerance: 0.0,
            margin,
            pass: margin >= 0.0,
            provenance,
        }
    }

    pub fn boolean(id: impl Into<String>, pass: bool, provenance: Provenance) -> Self {
        Check {
            id: id.into(),
            computed: if pass { 1.0 } else { 0.0 },
            expected: Some(1.0),
            tolerance: 0.0,
            margin: if pass { 0.0 } else { -1.0 },
            pass,
            provenance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Report { suite: suite.into(), seed, passed, failed, checks }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}
