//! Published constant tables, shipped as a versioned JSON data file
//! embedded into the crate and checksum-verified at first use. Lookups
//! succeed only at listed (delta, s) pairs; the constants are proven
//! only at those points, so interpolation is refused.

use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const CONSTANTS_JSON: &str = include_str!("../data/constants.json");

/// SHA-256 of the embedded data file; a mismatch means the build is
/// carrying an edited table without its checksum being updated.
pub const CONSTANTS_SHA256: &str =
    "eb4dd2fd904bc38917a378e7ca147aa75636a115479f6026ae9bd71fcf78d5ae";

/// Moment regime a constant was published for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Regime {
    Iid,
    General,
}

impl Regime {
    fn key(self) -> &'static str {
        match self {
            Regime::Iid => "iid",
            Regime::General => "general",
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct ConstantTables {
    pub version: u32,
    pub be_classical: Section<ClassicalRow>,
    pub be_structured: Section<StructuredRow>,
    pub be_structured_lower: Section<DeltaValueRow>,
    pub nonuniform: Section<StructuredRow>,
    pub m_poisson: Section<DeltaValueRow>,
    pub zeta1_mean: Section<Zeta1Row>,
    pub nonuniform_lower: Section<LowerRow>,
    pub poisson_lower_gamma: Section<GammaRow>,
}

#[derive(Debug, Deserialize)]
pub struct Section<R> {
    pub provenance: String,
    pub rows: Vec<R>,
}

#[derive(Debug, Deserialize)]
pub struct ClassicalRow {
    pub key: String,
    pub delta: Option<f64>,
    pub iid: f64,
    pub general: f64,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct StructuredRow {
    pub delta: f64,
    pub regime: String,
    pub s: f64,
    pub value: f64,
}

#[derive(Debug, Deserialize)]
pub struct DeltaValueRow {
    pub delta: f64,
    pub value: f64,
}

#[derive(Debug, Deserialize)]
pub struct Zeta1Row {
    pub delta: f64,
    pub upper: f64,
    pub lower: f64,
    pub p: f64,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct LowerRow {
    pub delta: f64,
    pub value: f64,
    pub p: f64,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct GammaRow {
    pub delta: f64,
    pub value: f64,
    pub gamma: f64,
    #[serde(default)]
    pub note: Option<String>,
}

static TABLES: OnceLock<ConstantTables> = OnceLock::new();

/// The shared constant tables; loaded once, checksum verified.
pub fn tables() -> &'static ConstantTables {
    TABLES.get_or_init(|| {
        let digest = Sha256::digest(CONSTANTS_JSON.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(
            hex, CONSTANTS_SHA256,
            "embedded constant table failed its checksum; refusing to serve constants"
        );
        let t: ConstantTables =
            serde_json::from_str(CONSTANTS_JSON).expect("embedded constant table must parse");
        assert_eq!(t.version, 1, "unsupported constant-table version");
        t
    })
}

fn delta_matches(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

/// Classical uniform-bound constant at a listed delta.
pub fn be_classical(delta: f64, regime: Regime) -> Result<f64> {
    tables()
        .be_classical
        .rows
        .iter()
        .find(|r| r.delta.map(|d| delta_matches(d, delta)).unwrap_or(false))
        .map(|r| match regime {
            Regime::Iid => r.iid,
            Regime::General => r.general,
        })
        .ok_or_else(|| Error::table(format!("no classical constant listed at delta = {delta}")))
}

/// All structured (s, C_s) pairs listed at a delta and regime,
/// including s = 0 from the classical table.
pub fn be_structured_entries(delta: f64, regime: Regime) -> Result<Vec<(f64, f64)>> {
    let mut out: Vec<(f64, f64)> = tables()
        .be_structured
        .rows
        .iter()
        .filter(|r| delta_matches(r.delta, delta) && r.regime == regime.key())
        .map(|r| (r.s, r.value))
        .collect();
    if !out.iter().any(|(s, _)| *s == 0.0) {
        if let Ok(c0) = be_classical(delta, regime) {
            out.insert(0, (0.0, c0));
        }
    }
    if out.is_empty() {
        return Err(Error::table(format!(
            "no structured constants listed at delta = {delta}"
        )));
    }
    Ok(out)
}

/// Structured constant at an exactly listed (delta, s) pair.
pub fn be_structured_at(delta: f64, regime: Regime, s: f64) -> Result<f64> {
    be_structured_entries(delta, regime)?
        .into_iter()
        .find(|(ss, _)| (ss - s).abs() < 1e-12)
        .map(|(_, v)| v)
        .ok_or_else(|| {
            Error::table(format!(
                "no structured constant listed at delta = {delta}, s = {s}; interpolation is refused"
            ))
        })
}

/// Nonuniform (s, K_s) pairs listed at a delta and regime.
pub fn nonuniform_entries(delta: f64, regime: Regime) -> Result<Vec<(f64, f64)>> {
    let out: Vec<(f64, f64)> = tables()
        .nonuniform
        .rows
        .iter()
        .filter(|r| delta_matches(r.delta, delta) && r.regime == regime.key())
        .map(|r| (r.s, r.value))
        .collect();
    if out.is_empty() {
        return Err(Error::table(format!(
            "no nonuniform constants listed at delta = {delta}"
        )));
    }
    Ok(out)
}

/// Poisson random-sum constant M(delta) = min over s in [0,1] of the
/// iid structured constants, at a listed delta.
pub fn m_poisson(delta: f64) -> Result<f64> {
    tables()
        .m_poisson
        .rows
        .iter()
        .find(|r| delta_matches(r.delta, delta))
        .map(|r| r.value)
        .ok_or_else(|| Error::table(format!("no M constant listed at delta = {delta}")))
}
