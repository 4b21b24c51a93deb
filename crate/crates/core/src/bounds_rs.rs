//! Accuracy bounds for random sums: Poisson coupling, Poisson-binomial
//! and Poisson random sums, mixed Poisson limits (Student, Laplace,
//! symmetrized-gamma), and sums indexed by compound-Poisson laws, with
//! their lower bounds and the worked aggregate-claims example.

use serde::Serialize;

use crate::bounds_clt::BoundResult;
use crate::error::{Error, Result};
use crate::special::{bessel_i0, gamma_ratio, normal_sf};
use crate::tables::{self, Regime};
use crate::tol;

/// Moments of the common summand law.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SummandMoments {
    /// Mean.
    pub a: f64,
    /// Second raw absolute moment E X^2.
    pub beta2: f64,
    /// Absolute moment of order 2+delta.
    pub beta: f64,
    pub delta: f64,
}

impl SummandMoments {
    pub fn new(a: f64, beta2: f64, beta: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::domain(format!("delta must lie in (0,1], got {delta}")));
        }
        if !(beta2 > 0.0) {
            return Err(Error::domain("needs E X^2 > 0"));
        }
        if beta < beta2.powf(1.0 + delta / 2.0) * (1.0 - 1e-9) {
            return Err(Error::domain(
                "moment ordering violated: E|X|^(2+delta) < (E X^2)^(1+delta/2)",
            ));
        }
        if a * a > beta2 * (1.0 + 1e-9) {
            return Err(Error::domain("mean square exceeds the second moment"));
        }
        Ok(SummandMoments { a, beta2, beta, delta })
    }
}

/// Success probabilities of a Poisson-binomial index with the derived
/// aggregates.
#[derive(Debug, Clone, Serialize)]
pub struct PBParams {
    pub p: Vec<f64>,
    pub lambda: f64,
    pub lambda2: f64,
    pub theta: f64,
    pub equal: bool,
}

impl PBParams {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::domain("needs at least one success probability"));
        }
        if p.iter().any(|x| !(*x > 0.0 && *x <= 1.0)) {
            return Err(Error::domain("every probability must lie in (0, 1]"));
        }
        let lambda: f64 = p.iter().sum();
        let lambda2: f64 = p.iter().map(|x| x * x).sum();
        let theta = lambda2 / lambda;
        let equal = p.iter().all(|x| (x - p[0]).abs() < 1e-12);
        Ok(PBParams { p, lambda, lambda2, theta, equal })
    }
}

/// Moments of a positive-integer index summand law Y.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct IndexMoments {
    pub ey: f64,
    pub ey2: Option<f64>,
    /// E Y^(1+delta/2).
    pub ey_1_half_delta: Option<f64>,
    /// E Y^(2+delta).
    pub ey_2_delta: Option<f64>,
}

/// Common-probability-space estimate for the Poisson approximation of
/// a Poisson-binomial law: total variation at most the sum of squared
/// success probabilities.
pub fn poisson_coupling_tv(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::domain("needs at least one success probability"));
    }
    if p.iter().any(|x| !(*x > 0.0 && *x <= 1.0)) {
        return Err(Error::domain("every probability must lie in (0, 1]"));
    }
    Ok(p.iter().map(|x| x * x).sum())
}

fn structured_entries_capped(delta: f64, regime: Regime) -> Result<Vec<(f64, f64)>> {
    // the random-sum bounds use s restricted to [0, 1]
    Ok(tables::be_structured_entries(delta, regime)?
        .into_iter()
        .filter(|(s, _)| (0.0..=1.0).contains(s))
        .collect())
}

/// Normal-approximation bound for standardized Poisson-binomial random
/// sums. Unequal probabilities use the general-case constants; equal
/// probabilities the iid ones. The centered case at delta = 1 follows
/// the boxed two-term display, whose second term carries the plain s
/// factor on sqrt(theta).
pub fn pb_sum_bound(pb: &PBParams, m: &SummandMoments) -> Result<BoundResult> {
    let delta = m.delta;
    let centered = m.a == 0.0;
    if !centered && pb.theta >= 1.0 {
        return Err(Error::domain(
            "uncentered summands need theta < 1 (some index probability below 1)",
        ));
    }
    let regime = if pb.equal { Regime::Iid } else { Regime::General };
    let ratio = m.beta / m.beta2.powf(1.0 + delta / 2.0);
    let th = pb.theta.powf(delta / 2.0);
    if centered && delta == 1.0 {
        let (c0, c1, s1) = if pb.equal { (0.469, 0.3031, 0.646) } else { (0.5583, 0.3057, 1.0) };
        let v0 = c0 * ratio;
        let v1 = c1 * ratio + s1 * th;
        let (v, s, c) = if v0 <= v1 { (v0, 0.0, c0) } else { (v1, s1, c1) };
        return Ok(BoundResult::new(
            v / pb.lambda.sqrt(),
            format!("C_{s}(1)"),
            c,
            "pb_sum(centered, delta=1)",
        )
        .assume("summand mean is zero"));
    }
    let entries = structured_entries_capped(delta, regime)?;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for (s, c) in entries {
        let v = if centered {
            c / pb.lambda.powf(delta / 2.0) * (ratio + s * th)
        } else {
            c / (pb.lambda * (1.0 - pb.theta)).powf(delta / 2.0)
                * (ratio * (1.0 + 3.25 * pb.theta.powf(delta)) / (1.0 - pb.theta) + s * th)
        };
        if v < best.0 {
            best = (v, s, c);
        }
    }
    let variant = if centered { "pb_sum(centered)" } else { "pb_sum(general)" };
    Ok(
        BoundResult::new(best.0, format!("C_{}({delta})", best.1), best.2, variant).assume(
            if centered { "summand mean is zero" } else { "theta < 1" },
        ),
    )
}

/// Normal-approximation bound for standardized Poisson random sums:
/// `M(delta) beta / (lambda^{delta/2} beta2^{1+delta/2})`.
pub fn poisson_sum_bound(lambda: f64, m: &SummandMoments) -> Result<BoundResult> {
    if !(lambda > 0.0) {
        return Err(Error::domain("needs lambda > 0"));
    }
    let md = tables::m_poisson(m.delta)?;
    // expression shape shared with the unit-index random-sum bound
    let value = md * (m.beta * 1.0)
        / (lambda.powf(m.delta / 2.0) * (m.beta2 * 1.0 + m.a * m.a * 0.0).powf(1.0 + m.delta / 2.0));
    Ok(BoundResult::new(value, format!("M({})", m.delta), md, "poisson_sum")
        .assume("M(1) = 0.3031 lies strictly below the classical floor 0.3989"))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PoissonSumLower {
    pub value: f64,
    pub gamma_star: f64,
}

/// Lower bound on the Poisson random-sum constant:
/// `(1/2) gamma^{delta/2} e^{-gamma} I0(gamma)`, either at a given
/// gamma or maximized over gamma by golden section.
pub fn poisson_sum_lower(delta: f64, gamma: Option<f64>) -> Result<PoissonSumLower> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain(format!("delta must lie in (0,1], got {delta}")));
    }
    let value_at = |g: f64| -> Result<f64> {
        Ok(0.5 * g.powf(delta / 2.0) * (-g).exp() * bessel_i0(g)?)
    };
    match gamma {
        Some(g) => {
            if !(g > 0.0) {
                return Err(Error::domain("needs gamma > 0"));
            }
            Ok(PoissonSumLower { value: value_at(g)?, gamma_star: g })
        }
        None => {
            // golden-section maximum on (1e-4, 20]
            let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
            let (mut a, mut b) = (1e-4, 20.0);
            let mut c = b - phi * (b - a);
            let mut d = a + phi * (b - a);
            let mut fc = value_at(c)?;
            let mut fd = value_at(d)?;
            while b - a > tol::GOLDEN_SECTION_TOL {
                if fc > fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - phi * (b - a);
                    fc = value_at(c)?;
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + phi * (b - a);
                    fd = value_at(d)?;
                }
            }
            let g = 0.5 * (a + b);
            Ok(PoissonSumLower { value: value_at(g)?, gamma_star: g })
        }
    }
}

/// Universal floor `I0(1)/(2e) > 81/(128e)` valid for every delta.
pub fn poisson_sum_lower_universal() -> f64 {
    bessel_i0(1.0).unwrap() / (2.0 * std::f64::consts::E)
}

/// Mixed-Poisson bound: `M(delta) beta E[Lambda^{-delta/2}] + delta_t`,
/// where the caller supplies the negative-power moment of the mixer and
/// a bound on the mixer distance term.
pub fn mixed_poisson_bound(
    m: &SummandMoments,
    e_lambda_neg_pow: f64,
    delta_t: f64,
) -> Result<BoundResult> {
    if m.a != 0.0 {
        return Err(Error::domain("mixed-Poisson bound needs centered summands"));
    }
    if !(e_lambda_neg_pow >= 0.0 && delta_t >= 0.0) {
        return Err(Error::domain("inputs must be nonnegative"));
    }
    let md = tables::m_poisson(m.delta)?;
    Ok(BoundResult::new(
        md * m.beta * e_lambda_neg_pow + delta_t,
        format!("M({})", m.delta),
        md,
        "mixed_poisson",
    )
    .assume("delta_t bounds half the uniform distance between the scaled mixer and its limit"))
}

/// Sharp constant of the Student-to-normal distance `A/r`.
pub fn pinelis_a() -> f64 {
    0.25 * ((7.0 + 5.0 * 2.0_f64.sqrt()) / (std::f64::consts::PI * (1.0 + 2.0_f64.sqrt()).exp()))
        .sqrt()
}

/// Normal-approximation constant for the symmetrized-gamma limit law.
pub fn a_r_constant(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain("needs r > 0"));
    }
    Ok(if r <= 1.59 {
        0.8593
    } else {
        (1.0 / (std::f64::consts::PI * (r - 1.0))).min(0.8593)
    })
}

#[derive(Debug, Clone, Copy)]
pub enum StudentMode {
    /// Distance to the Student limit with r degrees of freedom.
    Student,
    /// Distance to the normal law via the Student limit plus `A/r`.
    Normal,
    /// Normal distance at the order-balancing choice `r = t^{delta/(2+delta)}`.
    OptimalR,
}

/// Bounds for mixed-Poisson sums with an inverse-gamma mixer (Student
/// limit). Needs centered, unit-second-moment summands.
pub fn student_limit_bounds(
    r: f64,
    t: f64,
    m: &SummandMoments,
    mode: StudentMode,
) -> Result<BoundResult> {
    if !(r > 0.0 && t > 0.0) {
        return Err(Error::domain("needs r > 0 and t > 0"));
    }
    if m.a != 0.0 || (m.beta2 - 1.0).abs() > 1e-12 {
        return Err(Error::domain("needs centered summands with unit second moment"));
    }
    let delta = m.delta;
    let md = tables::m_poisson(delta)?;
    let sharp = (delta / 2.0).exp2() * md * gamma_ratio(r / 2.0, delta / 2.0)? * m.beta
        / t.powf(delta / 2.0);
    let relaxed = md * m.beta * (r / t).powf(delta / 2.0);
    match mode {
        StudentMode::Student => {
            Ok(BoundResult::new(sharp, format!("M({delta})"), md, "student")
                .assume(format!("relaxed gamma-ratio form: {relaxed:.6e}")))
        }
        StudentMode::Normal => {
            let a = pinelis_a();
            Ok(BoundResult::new(sharp + a / r, "Pinelis A", a, "student+normal")
                .assume("adds the sharp Student-to-normal term A/r"))
        }
        StudentMode::OptimalR => {
            let r_opt = t.powf(delta / (2.0 + delta));
            let a = pinelis_a();
            let value = (md * m.beta + a) * t.powf(-delta / (2.0 + delta));
            Ok(BoundResult::new(value, "M(delta) beta + A", md * m.beta + a, "student_optimal_r")
                .assume(format!("r = t^(delta/(2+delta)) = {r_opt:.6}")))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum NbLimitMode {
    /// Distance to the symmetrized-gamma limit.
    SymGamma,
    /// Distance to the normal law via the limit plus `A_r/r`.
    Normal,
    /// Geometric index (r = 1): distance to the Laplace limit.
    Laplace,
}

/// Bounds for negative-binomial random sums with centered,
/// unit-second-moment summands.
pub fn nb_limit_bounds(
    r: f64,
    p: f64,
    m: &SummandMoments,
    mode: NbLimitMode,
) -> Result<BoundResult> {
    if !(r > 0.0) || !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("needs r > 0 and p in (0,1)"));
    }
    if m.a != 0.0 || (m.beta2 - 1.0).abs() > 1e-12 {
        return Err(Error::domain("needs centered summands with unit second moment"));
    }
    let delta = m.delta;
    let md = tables::m_poisson(delta)?;
    let q = 1.0 - p;
    match mode {
        NbLimitMode::SymGamma | NbLimitMode::Normal => {
            if !(r > delta / 2.0) {
                return Err(Error::domain(format!(
                    "the gamma-ratio form needs r > delta/2 = {}",
                    delta / 2.0
                )));
            }
            // Gamma(r - delta/2) / Gamma(r) through the shift at the
            // smaller argument
            let ratio = 1.0 / gamma_ratio(r - delta / 2.0, delta / 2.0)?;
            let sharp = md * m.beta * ratio * (p / q).powf(delta / 2.0);
            let relaxed = md * m.beta * (1.0 + delta / (2.0 * r - delta)) * (p / r).powf(delta / 2.0)
                / q.powf(delta / 2.0);
            match mode {
                NbLimitMode::SymGamma => {
                    Ok(BoundResult::new(sharp, format!("M({delta})"), md, "nb_sym_gamma")
                        .assume(format!("relaxed gamma-ratio form: {relaxed:.6e}")))
                }
                NbLimitMode::Normal => {
                    let ar = a_r_constant(r)?;
                    Ok(BoundResult::new(sharp + ar / r, "A_r", ar, "nb_normal")
                        .assume("adds the symmetrized-gamma-to-normal term A_r/r"))
                }
                NbLimitMode::Laplace => unreachable!(),
            }
        }
        NbLimitMode::Laplace => {
            if (r - 1.0).abs() > 1e-12 {
                return Err(Error::domain("the Laplace limit is the r = 1 case"));
            }
            let coef = gamma_ratio(1.0 - delta / 2.0, delta / 2.0)?;
            // Gamma(1 - delta/2) itself
            let g = crate::special::gamma(1.0 - delta / 2.0)?;
            let _ = coef;
            let value = md * g * m.beta * (p / q).powf(delta / 2.0);
            Ok(BoundResult::new(value, format!("M({delta})Gamma(1-delta/2)"), md * g, "nb_laplace")
                .assume("Gamma(1 - delta/2) <= sqrt(pi) < 1.7725"))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum BdncMode {
    /// Any summand mean; needs E Y^2 and E Y^(2+delta).
    General,
    /// Centered summands; needs E Y^(1+delta/2).
    Centered,
    /// The combined form with both moment routes.
    Combined,
}

/// Normal-approximation bound for random sums whose index is a
/// compound-Poisson (nonnegative-integer infinitely divisible) law
/// `{Pois(lambda), Y}`.
pub fn bdnc_sum_bound(
    lambda: f64,
    y: &IndexMoments,
    m: &SummandMoments,
    mode: BdncMode,
) -> Result<BoundResult> {
    if !(lambda > 0.0) {
        return Err(Error::domain("needs lambda > 0"));
    }
    if !(y.ey > 0.0) {
        return Err(Error::domain("needs E Y > 0"));
    }
    let delta = m.delta;
    let md = tables::m_poisson(delta)?;
    let e = 1.0 + delta / 2.0;
    // variance of the elementary block {Y, X}: written so that
    // Y == 1 collapses to beta2 exactly
    let block_var = |ey2: f64| m.beta2 * y.ey + m.a * m.a * (ey2 - y.ey);
    match mode {
        BdncMode::General => {
            let ey2 = y.ey2.ok_or_else(|| Error::domain("general mode needs E Y^2"))?;
            let ey2d =
                y.ey_2_delta.ok_or_else(|| Error::domain("general mode needs E Y^(2+delta)"))?;
            let value =
                md * (m.beta * ey2d) / (lambda.powf(delta / 2.0) * block_var(ey2).powf(e));
            Ok(BoundResult::new(value, format!("M({delta})"), md, "bdnc_general"))
        }
        BdncMode::Centered => {
            if m.a != 0.0 {
                return Err(Error::domain("centered mode needs a zero summand mean"));
            }
            let ey1h = y
                .ey_1_half_delta
                .ok_or_else(|| Error::domain("centered mode needs E Y^(1+delta/2)"))?;
            let k = 0.5 * (1.0 + delta) * (4.0 + delta);
            let value = k * md / lambda.powf(delta / 2.0) * (m.beta / m.beta2.powf(e)) * ey1h
                / y.ey.powf(e);
            Ok(BoundResult::new(value, format!("K(2+delta) M({delta})"), k * md, "bdnc_centered")
                .assume("summand mean is zero"))
        }
        BdncMode::Combined => {
            let ey2 = y.ey2.ok_or_else(|| Error::domain("combined mode needs E Y^2"))?;
            let ey2d =
                y.ey_2_delta.ok_or_else(|| Error::domain("combined mode needs E Y^(2+delta)"))?;
            let ey1h = y
                .ey_1_half_delta
                .ok_or_else(|| Error::domain("combined mode needs E Y^(1+delta/2)"))?;
            // E|X - a|^(2+delta) <= beta + 3.25 beta2 |a|^delta
            let central = m.beta + 3.25 * m.beta2 * m.a.abs().powf(delta);
            let k = (1.0 + delta) * (4.0 + delta);
            let num = delta.exp2() * md
                * (k * central * ey1h + 2.0 * m.a.abs().powf(2.0 + delta) * ey2d);
            let value = num / (lambda.powf(delta / 2.0) * block_var(ey2).powf(e));
            Ok(BoundResult::new(value, format!("2^delta M({delta})"), delta.exp2() * md, "bdnc_combined")
                .assume("central summand moment bounded via beta + 3.25 beta2 |a|^delta"))
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NbIndexMoments {
    pub lambda: f64,
    pub ey: f64,
    /// Concave-power (Jensen) upper estimate of E Y^(1+delta/2).
    pub ey_1_half_delta_upper: f64,
    /// Matching upper estimate of the ratio E Y^(1+delta/2) / (E Y)^(1+delta/2).
    pub ratio_upper: f64,
}

/// Compound-Poisson parameters of a negative-binomial index: rate
/// `r ln(1/p)` with the log-series summand, and the Jensen estimates
/// of its fractional moments.
pub fn nb_index_moments(r: f64, p: f64, delta: f64) -> Result<NbIndexMoments> {
    if !(r > 0.0) || !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("needs r > 0 and p in (0,1)"));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain("delta must lie in (0,1]"));
    }
    let q = 1.0 - p;
    let ln_inv_p = -(p.ln());
    let lambda = r * ln_inv_p;
    let ey = q / (p * ln_inv_p);
    let ey1h_upper = q / (p.powf(1.0 + delta / 2.0) * ln_inv_p);
    let ratio_upper = (ln_inv_p / q).powf(delta / 2.0);
    Ok(NbIndexMoments { lambda, ey, ey_1_half_delta_upper: ey1h_upper, ratio_upper })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct InsuranceEstimate {
    /// Normal-approximation value of the exceedance probability.
    pub estimate: f64,
    /// Guaranteed approximation error from the random-sum bound.
    pub error_bound: f64,
    /// estimate + error_bound.
    pub ceiling: f64,
    pub mean_total: f64,
    pub var_total: f64,
    pub lambda: f64,
}

/// Aggregate-claims exceedance estimate for a multiple-Poisson claim
/// process: events of multiplicity k arrive at rate `rate(k)` per day,
/// each claim has the given moments, and the estimate is the normal
/// tail with a rigorous error ceiling.
pub fn insurance_tail_estimate(
    t_days: f64,
    a: f64,
    sigma2: f64,
    beta3: f64,
    rate: impl Fn(u32) -> f64,
    threshold: f64,
) -> Result<InsuranceEstimate> {
    if !(t_days > 0.0) || !(sigma2 > 0.0) || !(beta3 > 0.0) {
        return Err(Error::domain("needs positive horizon and claim moments"));
    }
    // partial sums of the rate series must settle
    let mut sums = (0.0f64, 0.0f64, 0.0f64, 0.0f64); // total, k, k^2, k^3 weighted
    let mut quiet_run = 0usize;
    let mut k = 1u32;
    loop {
        let lk = rate(k);
        if !(lk >= 0.0) || !lk.is_finite() {
            return Err(Error::domain(format!("rate({k}) must be finite and nonnegative")));
        }
        let before = sums.0;
        let kf = k as f64;
        sums.0 += lk;
        sums.1 += kf * lk;
        sums.2 += kf * kf * lk;
        sums.3 += kf * kf * kf * lk;
        if (sums.0 - before).abs() < tol::RATE_SERIES_TOL {
            quiet_run += 1;
            if quiet_run >= tol::RATE_SERIES_RUN {
                break;
            }
        } else {
            quiet_run = 0;
        }
        k += 1;
        if k > 100_000 {
            return Err(Error::domain(
                "rate series did not converge within 100000 terms".to_string(),
            ));
        }
    }
    let total_rate = sums.0;
    if !(total_rate > 0.0) {
        return Err(Error::domain("total rate must be positive"));
    }
    let lambda = t_days * total_rate;
    let y = IndexMoments {
        ey: sums.1 / total_rate,
        ey2: Some(sums.2 / total_rate),
        ey_1_half_delta: None,
        ey_2_delta: Some(sums.3 / total_rate),
    };
    let beta2 = sigma2 + a * a;
    let m = SummandMoments::new(a, beta2, beta3, 1.0)?;
    let mean_total = a * lambda * y.ey;
    let var_total = sigma2 * lambda * y.ey + a * a * lambda * y.ey2.unwrap();
    let estimate = normal_sf((threshold - mean_total) / var_total.sqrt());
    let error_bound = bdnc_sum_bound(lambda, &y, &m, BdncMode::General)?.value;
    Ok(InsuranceEstimate {
        estimate,
        error_bound,
        ceiling: estimate + error_bound,
        mean_total,
        var_total,
        lambda,
    })
}
