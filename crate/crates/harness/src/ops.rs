//! Named bound operations over flat parameter records: the dispatch
//! shared by the CLI `bound` verb and the data-driven scenarios.

use clap::Args;
use serde::Deserialize;
use serde_json::json;

use limitbounds::bounds_clt::{self, BoundResult, MomentProfile, NonuniformVariant, UniformVariant};
use limitbounds::bounds_rs::{
    self, BdncMode, IndexMoments, NbLimitMode, PBParams, StudentMode, SummandMoments,
};
use limitbounds::error::{Error, Result};

/// Flat parameter record accepted both as CLI flags and as JSON.
#[derive(Args, Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct BoundParams {
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Absolute moment of order 2+delta of the summand.
    #[arg(long, alias = "beta3")]
    #[serde(alias = "beta3")]
    pub beta: Option<f64>,
    #[arg(long)]
    pub beta2: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Summand mean.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Success probabilities (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub ey: Option<f64>,
    #[arg(long)]
    pub ey2: Option<f64>,
    #[arg(long = "ey-1-half-delta")]
    #[serde(rename = "ey_1_half_delta")]
    pub ey_1_half_delta: Option<f64>,
    #[arg(long = "ey-2-delta")]
    #[serde(rename = "ey_2_delta")]
    pub ey_2_delta: Option<f64>,
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Multiplicity rates lambda_k = base^k for the aggregate-claims
    /// estimate.
    #[arg(long = "rate-geometric")]
    #[serde(rename = "rate_geometric")]
    pub rate_geometric: Option<f64>,
    /// Variant/mode selector where the operation has one.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long, default_value_t = false)]
    #[serde(default)]
    pub optimize: bool,
}

fn bound_json(op: &str, b: &BoundResult) -> serde_json::Value {
    json!({
        "op": op,
        "value": b.value,
        "constant": format!("{}={}", b.constant_name, b.constant_value),
        "variant": b.variant,
        "assumptions": b.assumptions,
    })
}

fn need(v: Option<f64>, name: &str, op: &str) -> Result<f64> {
    v.ok_or_else(|| Error::domain(format!("op `{op}` needs parameter `{name}`")))
}

/// Evaluates a named operation; the result always carries a `value`
/// field (or equally self-describing numeric fields).
pub fn eval_op(op: &str, q: &BoundParams) -> Result<serde_json::Value> {
    match op {
        "poisson_sum" => {
            let m = SummandMoments::new(
                q.a.unwrap_or(0.0),
                need(q.beta2, "beta2", op)?,
                need(q.beta, "beta (or beta3)", op)?,
                need(q.delta, "delta", op)?,
            )?;
            let b = bounds_rs::poisson_sum_bound(need(q.lambda, "lambda", op)?, &m)?;
            Ok(bound_json(op, &b))
        }
        "pb_sum" => {
            let p = q
                .p
                .clone()
                .ok_or_else(|| Error::domain("op `pb_sum` needs parameter `p`"))?;
            let pb = PBParams::new(p)?;
            let m = SummandMoments::new(
                q.a.unwrap_or(0.0),
                need(q.beta2, "beta2", op)?,
                need(q.beta, "beta", op)?,
                need(q.delta, "delta", op)?,
            )?;
            let b = bounds_rs::pb_sum_bound(&pb, &m)?;
            Ok(bound_json(op, &b))
        }
        "berry_esseen" => {
            let profile = MomentProfile::iid(
                need(q.delta, "delta", op)?,
                need(q.sigma2, "sigma2", op)?,
                need(q.beta, "beta", op)?,
                need(q.n.map(f64::from), "n", op)? as u32,
            )?;
            let variant = match q.mode.as_deref().unwrap_or("best") {
                "classical" => UniformVariant::Classical,
                "best" => UniformVariant::Best,
                other => {
                    return Err(Error::domain(format!("unknown berry_esseen mode `{other}`")))
                }
            };
            let b = bounds_clt::berry_esseen_uniform(&profile, variant)?;
            Ok(bound_json(op, &b))
        }
        "nagaev_bikelis" => {
            let profile = MomentProfile::iid(
                need(q.delta, "delta", op)?,
                need(q.sigma2, "sigma2", op)?,
                need(q.beta, "beta", op)?,
                need(q.n.map(f64::from), "n", op)? as u32,
            )?;
            let b = bounds_clt::nonuniform_bound(
                &profile,
                need(q.x, "x", op)?,
                NonuniformVariant::NagaevBikelis { s_list: None },
            )?;
            Ok(bound_json(op, &b))
        }
        "osipov_constant" => {
            let (c, b_star) = bounds_clt::osipov_constant(need(q.c0, "c0", op)?)?;
            Ok(json!({ "op": op, "value": c, "b_star": b_star }))
        }
        "be_cf_constant" => {
            if q.optimize {
                let (c, b, d) = bounds_clt::be_cf_constant_optimized();
                Ok(json!({ "op": op, "value": c, "b": b, "d": d, "optimized": true }))
            } else {
                let c = bounds_clt::be_cf_constant(need(q.b, "b", op)?, need(q.d, "d", op)?)?;
                Ok(json!({ "op": op, "value": c }))
            }
        }
        "poisson_sum_lower" => {
            let r = bounds_rs::poisson_sum_lower(need(q.delta, "delta", op)?, q.gamma)?;
            Ok(json!({ "op": op, "value": r.value, "gamma_star": r.gamma_star }))
        }
        "psi" => {
            let p = q.p.as_ref().and_then(|v| v.first()).copied();
            let v = bounds_clt::psi_two_point(need(p, "p", op)?)?;
            Ok(json!({ "op": op, "value": v }))
        }
        "zeta1_mean_coefficient" => {
            let v = bounds_clt::mean_metric_coefficient(need(q.delta, "delta", op)?)?;
            Ok(json!({ "op": op, "value": v }))
        }
        "extremal_two_point" => {
            let e = bounds_clt::extremal_two_point(need(q.rho, "rho", op)?)?;
            Ok(json!({ "op": op, "value": e.a, "p": e.p, "a": e.a }))
        }
        "student" => {
            let m = SummandMoments::new(
                0.0,
                1.0,
                need(q.beta, "beta", op)?,
                need(q.delta, "delta", op)?,
            )?;
            let mode = match q.mode.as_deref().unwrap_or("student") {
                "student" => StudentMode::Student,
                "normal" => StudentMode::Normal,
                "optimal_r" => StudentMode::OptimalR,
                other => return Err(Error::domain(format!("unknown student mode `{other}`"))),
            };
            let b = bounds_rs::student_limit_bounds(
                need(q.r, "r", op)?,
                need(q.t, "t", op)?,
                &m,
                mode,
            )?;
            Ok(bound_json(op, &b))
        }
        "nb_limit" => {
            let m = SummandMoments::new(
                0.0,
                1.0,
                need(q.beta, "beta", op)?,
                need(q.delta, "delta", op)?,
            )?;
            let mode = match q.mode.as_deref().unwrap_or("sym_gamma") {
                "sym_gamma" => NbLimitMode::SymGamma,
                "normal" => NbLimitMode::Normal,
                "laplace" => NbLimitMode::Laplace,
                other => return Err(Error::domain(format!("unknown nb_limit mode `{other}`"))),
            };
            let p = q.p.as_ref().and_then(|v| v.first()).copied();
            let b = bounds_rs::nb_limit_bounds(need(q.r, "r", op)?, need(p, "p", op)?, &m, mode)?;
            Ok(bound_json(op, &b))
        }
        "bdnc_sum" => {
            let m = SummandMoments::new(
                q.a.unwrap_or(0.0),
                need(q.beta2, "beta2", op)?,
                need(q.beta, "beta", op)?,
                need(q.delta, "delta", op)?,
            )?;
            let y = IndexMoments {
                ey: need(q.ey, "ey", op)?,
                ey2: q.ey2,
                ey_1_half_delta: q.ey_1_half_delta,
                ey_2_delta: q.ey_2_delta,
            };
            let mode = match q.mode.as_deref().unwrap_or("general") {
                "general" => BdncMode::General,
                "centered" => BdncMode::Centered,
                "combined" => BdncMode::Combined,
                other => return Err(Error::domain(format!("unknown bdnc_sum mode `{other}`"))),
            };
            let b = bounds_rs::bdnc_sum_bound(need(q.lambda, "lambda", op)?, &y, &m, mode)?;
            Ok(bound_json(op, &b))
        }
        "nb_index_moments" => {
            let p = q.p.as_ref().and_then(|v| v.first()).copied();
            let im = bounds_rs::nb_index_moments(
                need(q.r, "r", op)?,
                need(p, "p", op)?,
                need(q.delta, "delta", op)?,
            )?;
            let mut v = serde_json::to_value(&im).unwrap();
            v["op"] = json!(op);
            v["value"] = json!(im.lambda);
            Ok(v)
        }
        "mixed_poisson" => {
            let m = SummandMoments::new(
                0.0,
                1.0,
                need(q.beta, "beta", op)?,
                need(q.delta, "delta", op)?,
            )?;
            // x carries E Lambda^{-delta/2}; d carries the mixer term
            let b = bounds_rs::mixed_poisson_bound(
                &m,
                need(q.x, "x (E Lambda^(-delta/2))", op)?,
                q.d.unwrap_or(0.0),
            )?;
            Ok(bound_json(op, &b))
        }
        "insurance" => {
            let base = need(q.rate_geometric, "rate_geometric", op)?;
            if !(base > 0.0 && base < 1.0) {
                return Err(Error::domain("rate_geometric must lie in (0,1)"));
            }
            let est = bounds_rs::insurance_tail_estimate(
                need(q.t, "t", op)?,
                need(q.a, "a", op)?,
                need(q.sigma2, "sigma2", op)?,
                need(q.beta, "beta (third claim moment)", op)?,
                |k| base.powi(k as i32),
                need(q.threshold, "threshold", op)?,
            )?;
            let mut v = serde_json::to_value(&est).unwrap();
            v["op"] = json!(op);
            v["value"] = json!(est.estimate);
            Ok(v)
        }
        other => Err(Error::domain(format!("unknown bound op `{other}`"))),
    }
}
