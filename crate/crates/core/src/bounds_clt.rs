//! Uniform, nonuniform, and mean-metric accuracy bounds for the normal
//! approximation of sums of independent random variables, evaluated as
//! formulas over moment data, together with the matching lower-bound
//! constructions and constant optimizers.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::LatticeDist;
use crate::special::{normal_cdf, normal_pdf, normal_quantile, SQRT_2PI};
use crate::tables::{self, Regime};
use crate::tol;

/// A computed bound with the constant behind it and the assumptions it
/// rides on.
#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    pub value: f64,
    pub constant_name: String,
    pub constant_value: f64,
    pub variant: String,
    pub assumptions: Vec<String>,
    pub error_bar: Option<f64>,
}

impl BoundResult {
    pub(crate) fn new(
        value: f64,
        name: impl Into<String>,
        constant: f64,
        variant: impl Into<String>,
    ) -> Self {
        BoundResult {
            value,
            constant_name: name.into(),
            constant_value: constant,
            variant: variant.into(),
            assumptions: Vec::new(),
            error_bar: None,
        }
    }

    pub(crate) fn assume(mut self, a: impl Into<String>) -> Self {
        self.assumptions.push(a.into());
        self
    }
}

/// Per-summand second and (2+delta)-th absolute moments.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SummandMoment {
    pub sigma2: f64,
    pub beta: f64,
}

/// Moment data feeding the uniform and nonuniform bounds: either n
/// iid summands or an explicit per-summand list.
#[derive(Debug, Clone)]
pub struct MomentProfile {
    pub delta: f64,
    pub summands: Summands,
}

#[derive(Debug, Clone)]
pub enum Summands {
    Iid {
        sigma2: f64,
        beta: f64,
        /// |E X^(2+delta)| when a signed-moment refinement wants it.
        mean_abs_raw: Option<f64>,
        n: u32,
    },
    General(Vec<SummandMoment>),
}

impl MomentProfile {
    pub fn iid(delta: f64, sigma2: f64, beta: f64, n: u32) -> Result<Self> {
        let p = MomentProfile {
            delta,
            summands: Summands::Iid { sigma2, beta, mean_abs_raw: None, n },
        };
        p.validate()?;
        Ok(p)
    }

    pub fn general(delta: f64, summands: Vec<SummandMoment>) -> Result<Self> {
        let p = MomentProfile { delta, summands: Summands::General(summands) };
        p.validate()?;
        Ok(p)
    }

    /// Moment profile of n iid copies of a centered lattice law.
    pub fn from_lattice_iid(d: &LatticeDist, delta: f64, n: u32) -> Result<Self> {
        let sigma2 = d.variance();
        let beta = d.moment(2.0 + delta, crate::lattice::MomentMode::CentralAbsolute)?;
        Self::iid(delta, sigma2, beta, n)
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::domain(format!("delta must lie in (0,1], got {}", self.delta)));
        }
        let lyapunov = |sigma2: f64, beta: f64| -> Result<()> {
            if !(sigma2 >= 0.0) || !(beta >= 0.0) {
                return Err(Error::domain("moments must be nonnegative"));
            }
            if beta < sigma2.powf(1.0 + self.delta / 2.0) * (1.0 - 1e-9) {
                return Err(Error::domain(format!(
                    "moment ordering violated: beta = {beta} < sigma2^(1+delta/2) = {}",
                    sigma2.powf(1.0 + self.delta / 2.0)
                )));
            }
            Ok(())
        };
        match &self.summands {
            Summands::Iid { sigma2, beta, n, .. } => {
                if *n == 0 {
                    return Err(Error::domain("need n >= 1 summands"));
                }
                if !(*sigma2 > 0.0) {
                    return Err(Error::domain("iid profile needs sigma2 > 0"));
                }
                lyapunov(*sigma2, *beta)?;
            }
            Summands::General(list) => {
                if list.is_empty() {
                    return Err(Error::domain("need at least one summand"));
                }
                let b2: f64 = list.iter().map(|s| s.sigma2).sum();
                if !(b2 > 0.0) {
                    return Err(Error::domain("total variance must be positive"));
                }
                for s in list {
                    lyapunov(s.sigma2, s.beta)?;
                }
            }
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        match self.summands {
            Summands::Iid { .. } => Regime::Iid,
            Summands::General(_) => Regime::General,
        }
    }

    pub fn n(&self) -> usize {
        match &self.summands {
            Summands::Iid { n, .. } => *n as usize,
            Summands::General(list) => list.len(),
        }
    }
}

/// Lyapunov-type fractions of a moment profile.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Fractions {
    /// Normalized (2+delta)-th absolute moments.
    pub l: f64,
    /// Normalized (2+delta)-th powers of the variances.
    pub t: f64,
    /// Standard deviation of the sum.
    pub b_n: f64,
}

/// The fractions L, T and the sum scale B_n; always
/// `n^(-delta/2) <= T <= L`.
pub fn fractions(p: &MomentProfile) -> Fractions {
    let e = 1.0 + p.delta / 2.0;
    match &p.summands {
        Summands::Iid { sigma2, beta, n, .. } => {
            let n = *n as f64;
            let b2 = n * sigma2;
            let l = n * beta / b2.powf(e);
            let t = n * sigma2.powf(e) / b2.powf(e);
            Fractions { l, t, b_n: b2.sqrt() }
        }
        Summands::General(list) => {
            let b2: f64 = list.iter().map(|s| s.sigma2).sum();
            let l = list.iter().map(|s| s.beta).sum::<f64>() / b2.powf(e);
            let t = list.iter().map(|s| s.sigma2.powf(e)).sum::<f64>() / b2.powf(e);
            Fractions { l, t, b_n: b2.sqrt() }
        }
    }
}

/// Which form of the uniform bound to evaluate.
#[derive(Debug, Clone)]
pub enum UniformVariant {
    /// `C0(delta) * L`.
    Classical,
    /// Minimum of `C_s(delta) (L + s T)` over the requested s values,
    /// which must all be listed in the tables.
    Structured(Vec<f64>),
    /// Minimum over every published form at this delta and regime.
    Best,
}

/// Uniform Berry-Esseen-type bound on `sup |F_n - Phi|` from moments.
pub fn berry_esseen_uniform(p: &MomentProfile, variant: UniformVariant) -> Result<BoundResult> {
    let fr = fractions(p);
    let regime = p.regime();
    let pick_min = |entries: &[(f64, f64)]| -> (f64, f64, f64) {
        let mut best = (f64::INFINITY, 0.0, 0.0);
        for &(s, c) in entries {
            let v = c * (fr.l + s * fr.t);
            if v < best.0 {
                best = (v, s, c);
            }
        }
        best
    };
    match variant {
        UniformVariant::Classical => {
            let c0 = tables::be_classical(p.delta, regime)?;
            Ok(
                BoundResult::new(c0 * fr.l, format!("C0({})", p.delta), c0, "classical")
                    .assume("independent centered summands with the listed moments"),
            )
        }
        UniformVariant::Structured(s_list) => {
            let mut entries = Vec::new();
            for s in s_list {
                entries.push((s, tables::be_structured_at(p.delta, regime, s)?));
            }
            let (v, s, c) = pick_min(&entries);
            Ok(BoundResult::new(v, format!("C_{s}({})", p.delta), c, "structured")
                .assume("independent centered summands with the listed moments"))
        }
        UniformVariant::Best => {
            let entries = tables::be_structured_entries(p.delta, regime)?;
            let (v, s, c) = pick_min(&entries);
            Ok(BoundResult::new(v, format!("C_{s}({})", p.delta), c, "best")
                .assume("independent centered summands with the listed moments"))
        }
    }
}

/// Characteristic-function-method constant
/// `(2/sqrt(2 pi)) (b/(1 - 2d/3)^{3/2} + 2b(b+1)/(pi d (b-1)))`
/// for b > 1 and d in (0, 3/2).
pub fn be_cf_constant(b: f64, d: f64) -> Result<f64> {
    if !(b > 1.0) {
        return Err(Error::domain(format!("needs b > 1, got {b}")));
    }
    if !(d > 0.0 && d < 1.5) {
        return Err(Error::domain(format!("needs d in (0, 3/2), got {d}")));
    }
    Ok(2.0 / SQRT_2PI * (b / (1.0 - 2.0 * d / 3.0).powf(1.5) + 2.0 * b * (b + 1.0) / (PI * d * (b - 1.0))))
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol::GOLDEN_SECTION_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Optimizes the characteristic-function constant over (b, d) by nested
/// golden-section search; both slices are unimodal.
pub fn be_cf_constant_optimized() -> (f64, f64, f64) {
    let inner = |b: f64| golden_min(|d| be_cf_constant(b, d).unwrap(), 1e-6, 1.5 - 1e-6);
    let (b, _) = golden_min(|bb| inner(bb).1, 1.0 + 1e-6, 8.0);
    let (d, c) = inner(b);
    (c, b, d)
}

/// Truncation-method constant as a function of the classical constant
/// `c0`: the crossing point of `2/(1-b^2)` (increasing in b) and
/// `1 + 4.25 c0/b^3 + (1 + 2 e^{-1/2}/(1+b))/(sqrt(2 pi) b)`
/// (decreasing), solved by bisection. Returns (C, b*).
pub fn osipov_constant(c0: f64) -> Result<(f64, f64)> {
    if !(c0 > 0.0) {
        return Err(Error::domain("needs a positive classical constant"));
    }
    let f1 = |b: f64| 2.0 / (1.0 - b * b);
    let f2 = |b: f64| {
        1.0 + 4.25 * c0 / (b * b * b)
            + (1.0 + 2.0 * (-0.5_f64).exp() / (1.0 + b)) / (SQRT_2PI * b)
    };
    let g = |b: f64| f1(b) - f2(b);
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-9);
    if g(lo) > 0.0 || g(hi) < 0.0 {
        return Err(Error::numeric("crossing equation has no root in (0,1)"));
    }
    while hi - lo > tol::CROSSING_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = 0.5 * (lo + hi);
    Ok((f1(b).max(f2(b)), b))
}

/// Constant choice for [`osipov`].
#[derive(Debug, Clone, Copy)]
pub enum OsipovConstant {
    /// Solve the crossing equation with this classical constant.
    FromClassical(f64),
    /// The best constant known from the literature, C = 1.87.
    Literature,
}

fn check_centered(dists: &[LatticeDist]) -> Result<()> {
    for d in dists {
        let scale = d.variance().sqrt().max(1.0);
        if d.mean().abs() > 1e-9 * scale {
            return Err(Error::domain("summand laws must be centered"));
        }
    }
    Ok(())
}

/// Truncated-moment uniform bound `C (L_n(eps) + M_n(eps))` evaluated
/// from exact lattice moments.
pub fn osipov(dists: &[LatticeDist], eps: f64, constant: OsipovConstant) -> Result<BoundResult> {
    check_centered(dists)?;
    let fr = LatticeDist::lindeberg_osipov_fractions(dists, eps)?;
    let (c, name) = match constant {
        OsipovConstant::FromClassical(c0) => {
            let (c, b) = osipov_constant(c0)?;
            (c, format!("C(c0={c0}, b*={b:.4})"))
        }
        OsipovConstant::Literature => (1.87, "C=1.87 (literature)".to_string()),
    };
    Ok(
        BoundResult::new(c * (fr.l_n_eps + fr.m_n_eps), name, c, format!("osipov(eps={eps})"))
            .assume("independent centered summands"),
    )
}

/// A weight function claimed to lie in the monotone-envelope class:
/// even, positive for x > 0, with g and x/g both nondecreasing on
/// (0, inf). Membership is checked on a log-spaced sampling grid at
/// construction.
pub struct GClassFunction {
    g: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub domain_max: f64,
}

impl GClassFunction {
    pub fn new<F>(g: F, domain_max: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(domain_max > 1e-6) {
            return Err(Error::domain("declared domain must extend past 1e-6"));
        }
        let lo: f64 = 1e-6;
        let ratio = (domain_max / lo).powf(1.0 / (tol::G_CLASS_GRID as f64 - 1.0));
        let mut prev_g: Option<f64> = None;
        let mut prev_xg: Option<f64> = None;
        let mut x = lo;
        for _ in 0..tol::G_CLASS_GRID {
            let v = g(x);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::structural(format!(
                    "weight function must be positive and finite on (0, domain); g({x}) = {v}"
                )));
            }
            if (g(-x) - v).abs() > tol::G_CLASS_TOL * v.abs().max(1.0) {
                return Err(Error::structural("weight function must be even"));
            }
            if let Some(pg) = prev_g {
                if v < pg - tol::G_CLASS_TOL * pg.abs().max(1.0) {
                    return Err(Error::structural("weight function must be nondecreasing"));
                }
            }
            let xg = x / v;
            if let Some(pxg) = prev_xg {
                if xg < pxg - tol::G_CLASS_TOL * pxg.abs().max(1.0) {
                    return Err(Error::structural("x over the weight function must be nondecreasing"));
                }
            }
            prev_g = Some(v);
            prev_xg = Some(xg);
            x *= ratio;
        }
        Ok(GClassFunction { g: Box::new(g), domain_max })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    /// `min(1, |x|/a)`: the member that minimizes the weighted bound.
    pub fn lower_envelope(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::domain("envelope scale must be positive"));
        }
        Self::new(move |x: f64| (x.abs() / a).min(1.0), a * 1e6)
    }

    /// `max(1, |x|/a)`.
    pub fn upper_envelope(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::domain("envelope scale must be positive"));
        }
        Self::new(move |x: f64| (x.abs() / a).max(1.0), a * 1e6)
    }
}

/// Weighted-moment uniform bound
/// `A / (B_n^2 g(B_n)) * sum E X_k^2 g(X_k)` by exact atom summation.
pub fn katz_petrov(dists: &[LatticeDist], g: &GClassFunction, a: f64) -> Result<BoundResult> {
    check_centered(dists)?;
    if !(a > 0.0) {
        return Err(Error::domain("constant A must be positive"));
    }
    let b2: f64 = dists.iter().map(|d| d.variance()).sum();
    if !(b2 > 0.0) {
        return Err(Error::domain("all summands are degenerate"));
    }
    let b_n = b2.sqrt();
    let mut sum = 0.0;
    for d in dists {
        for (x, w) in d.atoms() {
            sum += w * x * x * if x == 0.0 { 0.0 } else { g.eval(x) };
        }
    }
    let value = a / (b2 * g.eval(b_n)) * sum;
    Ok(BoundResult::new(value, "A", a, "katz_petrov")
        .assume("independent centered summands; weight function in the monotone-envelope class"))
}

/// Nonuniform bound variants at the point x.
pub enum NonuniformVariant<'a> {
    /// `min over listed s of K_s(delta) (L + sT) / (1 + |x|^{2+delta})`.
    NagaevBikelis { s_list: Option<&'a [f64]> },
    /// Truncated-moment form with exact atom sums; `a = None` selects
    /// the published default constant for the regime and |x|.
    Bikelis { a: Option<f64>, dists: &'a [LatticeDist] },
    /// Weighted-moment form with a caller weight function.
    Petrov { a: Option<f64>, g: &'a GClassFunction, dists: &'a [LatticeDist] },
}

/// Published default constants for the truncated/weighted nonuniform
/// forms; refined values apply for |x| >= 10.
pub fn bikelis_default_constant(regime: Regime, x: f64) -> f64 {
    match (regime, x.abs() >= 10.0) {
        (Regime::General, false) => 47.65,
        (Regime::Iid, false) => 39.32,
        (Regime::General, true) => 29.62,
        (Regime::Iid, true) => 24.13,
    }
}

/// Nonuniform bound on `|F_n(x) - Phi(x)|` at the point x.
pub fn nonuniform_bound(
    p: &MomentProfile,
    x: f64,
    variant: NonuniformVariant<'_>,
) -> Result<BoundResult> {
    match variant {
        NonuniformVariant::NagaevBikelis { s_list } => {
            let fr = fractions(p);
            let entries = tables::nonuniform_entries(p.delta, p.regime())?;
            let chosen: Vec<(f64, f64)> = match s_list {
                None => entries,
                Some(list) => {
                    let mut out = Vec::new();
                    for &s in list {
                        let e = entries.iter().find(|(ss, _)| (ss - s).abs() < 1e-12).ok_or_else(
                            || {
                                Error::table(format!(
                                    "no nonuniform constant listed at delta = {}, s = {s}",
                                    p.delta
                                ))
                            },
                        )?;
                        out.push(*e);
                    }
                    out
                }
            };
            let denom = 1.0 + x.abs().powf(2.0 + p.delta);
            let mut best = (f64::INFINITY, 0.0, 0.0);
            for (s, k) in chosen {
                let v = k * (fr.l + s * fr.t) / denom;
                if v < best.0 {
                    best = (v, s, k);
                }
            }
            Ok(BoundResult::new(
                best.0,
                format!("K_{}({})", best.1, p.delta),
                best.2,
                "nagaev_bikelis",
            ))
        }
        NonuniformVariant::Bikelis { a, dists } => {
            check_centered(dists)?;
            let a = a.unwrap_or_else(|| bikelis_default_constant(p.regime(), x));
            let b2: f64 = dists.iter().map(|d| d.variance()).sum();
            let b_n = b2.sqrt();
            let cut = (1.0 + x.abs()) * b_n;
            let mut sum = 0.0;
            for d in dists {
                for (xx, w) in d.atoms() {
                    if xx.abs() > cut {
                        sum += w * xx * xx / (cut * cut);
                    } else {
                        sum += w * xx.abs().powi(3) / (cut * cut * cut);
                    }
                }
            }
            Ok(BoundResult::new(a * sum, "A", a, "bikelis").assume(format!(
                "default constant refined for |x| >= 10: {}",
                bikelis_default_constant(p.regime(), 10.0)
            )))
        }
        NonuniformVariant::Petrov { a, g, dists } => {
            check_centered(dists)?;
            let a = a.unwrap_or_else(|| bikelis_default_constant(p.regime(), x));
            let b2: f64 = dists.iter().map(|d| d.variance()).sum();
            let b_n = b2.sqrt();
            let cut = (1.0 + x.abs()) * b_n;
            let mut sum = 0.0;
            for d in dists {
                for (xx, w) in d.atoms() {
                    if xx != 0.0 {
                        sum += w * xx * xx * g.eval(xx);
                    }
                }
            }
            let value = a * sum / (cut * cut * g.eval(cut));
            Ok(BoundResult::new(value, "A", a, "petrov"))
        }
    }
}

/// Lower-bound constructions on the classical constants.
#[derive(Debug, Clone, Copy)]
pub enum LowerBoundKind {
    /// `1/sqrt(2 pi)`, the symmetric two-point floor.
    CltSqrt2pi,
    /// `(sqrt(10) + 3)/(6 sqrt(2 pi))`, the two-point optimum.
    Esseen,
    /// The exact symmetric-binomial distance at n.
    HippMattner(u32),
    /// `sqrt(gamma) (e^{-gamma} sum_{k<=m} gamma^k/k! - Phi((m-gamma)/sqrt(gamma)))`.
    InfCs { m: u32, gamma: f64 },
    /// Two-point nonuniform minorant at (delta, p).
    NonuniformMinorant { delta: f64, p: f64 },
}

/// Exact symmetric-binomial uniform distance:
/// `Phi(1/sqrt(n)) - 1/2` for odd n, `binom(n, n/2) 2^{-(n+1)}` for even n.
pub fn hipp_mattner_exact(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("needs n >= 1"));
    }
    if n % 2 == 1 {
        Ok(normal_cdf(1.0 / (n as f64).sqrt()) - 0.5)
    } else {
        let half = n / 2;
        let mut c = 1.0f64;
        for k in 1..=half {
            c *= (half + k) as f64 / k as f64;
        }
        Ok(c * 0.5f64.powi(n as i32 + 1))
    }
}

pub fn lower_bounds(kind: LowerBoundKind) -> Result<f64> {
    match kind {
        LowerBoundKind::CltSqrt2pi => Ok(1.0 / SQRT_2PI),
        LowerBoundKind::Esseen => Ok((10.0_f64.sqrt() + 3.0) / (6.0 * SQRT_2PI)),
        LowerBoundKind::HippMattner(n) => hipp_mattner_exact(n),
        LowerBoundKind::InfCs { m, gamma } => {
            if !(gamma > 0.0) {
                return Err(Error::domain("needs gamma > 0"));
            }
            let mut term = (-gamma).exp();
            let mut sum = term;
            for k in 1..=m {
                term *= gamma / k as f64;
                sum += term;
            }
            Ok(gamma.sqrt() * (sum - normal_cdf((m as f64 - gamma) / gamma.sqrt())))
        }
        LowerBoundKind::NonuniformMinorant { delta, p } => {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::domain("needs p in (0,1)"));
            }
            if !(0.0..=1.0).contains(&delta) {
                return Err(Error::domain("needs delta in [0,1]"));
            }
            let q = 1.0 - p;
            let ratio = (p.powf(1.0 + delta / 2.0) + q.powf(1.0 + delta / 2.0))
                / (p.powf(1.0 + delta) + q.powf(1.0 + delta));
            let tail = normal_cdf(-(q / p).sqrt());
            Ok(q.powf(delta / 2.0) * ratio * (1.0 - tail / p).abs())
        }
    }
}

/// Closed-form mean-metric distance between the standardized two-point
/// law at parameter p and the standard normal law. Evaluated on the
/// p <= 1/2 branch; larger p maps to 1-p by symmetry.
pub fn psi_two_point(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("needs p in (0,1), got {p}")));
    }
    let p = if p > 0.5 { 1.0 - p } else { p };
    let q = 1.0 - p;
    let rq = (q / p).sqrt();
    let rp = (p / q).sqrt();
    Ok(2.0 * rq * normal_cdf(rq) + 2.0 * rp * normal_cdf(rp) + 2.0 * normal_pdf(rq)
        + 2.0 * normal_pdf(rp)
        - 2.0 * normal_pdf(normal_quantile(q)?)
        - 2.0 * (1.0 - p * q) / (p * q).sqrt())
}

/// Coefficient of the mean-metric (L1-CDF) bound as a function of the
/// moment order: `(2/(1+delta)) (pi/2)^{(1-delta)/2}` for delta in
/// [0, 1]; at delta = 0 the normalized fraction degenerates to 1 and
/// the coefficient is sqrt(2 pi).
pub fn mean_metric_coefficient(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("delta must lie in [0,1], got {delta}")));
    }
    Ok(2.0 / (1.0 + delta) * (PI / 2.0).powf((1.0 - delta) / 2.0))
}

/// Variants of the mean-metric (L1-CDF) bounds.
pub enum Zeta1Variant<'a> {
    /// `C * sum E X_k^2 min(|X_k|, B_n) / B_n^3` by exact atom sums.
    Erickson { c: Option<f64>, dists: &'a [LatticeDist] },
    /// `(2/(1+delta)) (pi/2)^{(1-delta)/2} * L`.
    MeanMetricConstant(&'a MomentProfile),
    /// Two-point minorant `(pq)^{delta/2} psi(p) / (p^{1+delta} + q^{1+delta})`.
    LowerPsi { delta: f64, p: f64 },
}

pub fn zeta1_bounds(variant: Zeta1Variant<'_>) -> Result<BoundResult> {
    match variant {
        Zeta1Variant::Erickson { c, dists } => {
            check_centered(dists)?;
            let c = c.unwrap_or(36.0);
            let b2: f64 = dists.iter().map(|d| d.variance()).sum();
            if !(b2 > 0.0) {
                return Err(Error::domain("all summands are degenerate"));
            }
            let b_n = b2.sqrt();
            let mut sum = 0.0;
            for d in dists {
                for (x, w) in d.atoms() {
                    sum += w * x * x * x.abs().min(b_n);
                }
            }
            Ok(BoundResult::new(c * sum / (b2 * b_n), "C", c, "erickson"))
        }
        Zeta1Variant::MeanMetricConstant(p) => {
            let coef = mean_metric_coefficient(p.delta)?;
            let fr = fractions(p);
            Ok(BoundResult::new(coef * fr.l, format!("C({})", p.delta), coef, "mean_metric"))
        }
        Zeta1Variant::LowerPsi { delta, p } => {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::domain("needs p in (0,1)"));
            }
            if !(0.0..=1.0).contains(&delta) {
                return Err(Error::domain("needs delta in [0,1]"));
            }
            let q = 1.0 - p;
            let psi = psi_two_point(p)?;
            let value =
                (p * q).powf(delta / 2.0) * psi / (p.powf(1.0 + delta) + q.powf(1.0 + delta));
            Ok(BoundResult::new(value, "psi(p)", psi, "lower_psi"))
        }
    }
}

/// Order selector for the higher-order smooth-metric bounds.
#[derive(Debug, Clone, Copy)]
pub enum ZetaHighOrder {
    /// Order 2 at delta = 1: `(sqrt(2 pi)/8) L_3`.
    Two,
    /// Order 2+delta: `L / ((1+delta)(2+delta))`.
    TwoPlusDelta,
    /// Order 3 with the odd-moment extremal factor and the faster
    /// second term.
    ThreeRefined,
}

pub fn zeta_high_bounds(p: &MomentProfile, order: ZetaHighOrder) -> Result<BoundResult> {
    let fr = fractions(p);
    match order {
        ZetaHighOrder::Two => {
            if (p.delta - 1.0).abs() > 1e-12 {
                return Err(Error::domain("the order-2 bound needs delta = 1"));
            }
            let coef = SQRT_2PI / 8.0;
            Ok(BoundResult::new(coef * fr.l, "sqrt(2 pi)/8", coef, "zeta2"))
        }
        ZetaHighOrder::TwoPlusDelta => {
            let coef = 1.0 / ((1.0 + p.delta) * (2.0 + p.delta));
            Ok(BoundResult::new(coef * fr.l, "1/((1+d)(2+d))", coef, "zeta_2_plus_delta"))
        }
        ZetaHighOrder::ThreeRefined => {
            if (p.delta - 1.0).abs() > 1e-12 {
                return Err(Error::domain("the refined order-3 bound needs delta = 1"));
            }
            match &p.summands {
                Summands::Iid { sigma2, beta, n, .. } => {
                    let rho = beta / sigma2.powf(1.5);
                    let ext = extremal_two_point(rho)?;
                    let n = *n as f64;
                    let value = rho * ext.a / (6.0 * n.sqrt()) + 0.1352 / n;
                    Ok(BoundResult::new(value, "A(rho)", ext.a, "zeta3_refined_iid"))
                }
                Summands::General(list) => {
                    let mut sorted = list.clone();
                    sorted.sort_by(|a, b| b.sigma2.partial_cmp(&a.sigma2).unwrap());
                    let b2: f64 = sorted.iter().map(|s| s.sigma2).sum();
                    let b3 = b2.powf(1.5);
                    let mut value = 0.0;
                    for s in &sorted {
                        if s.sigma2 > 0.0 {
                            let rho = s.beta / s.sigma2.powf(1.5);
                            value += s.beta / b3 * extremal_two_point(rho)?.a / 6.0;
                        }
                    }
                    value += 0.0993 * sorted[0].sigma2.powf(1.5) / b3;
                    for (k, s) in sorted.iter().enumerate().skip(1) {
                        value += 0.0665 / b3 * s.sigma2.powf(1.5) / (k as f64).sqrt();
                    }
                    Ok(BoundResult::new(value, "A(rho) per summand", f64::NAN, "zeta3_refined_general")
                        .assume("summands ordered by decreasing variance"))
                }
            }
        }
    }
}

/// Extremal two-point law at a given absolute third moment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExtremalTwoPoint {
    /// Success probability of the two-point law with
    /// `E|X|^3 = rho` and nonnegative third moment.
    pub p: f64,
    /// Largest possible |E X^3| / E|X|^3 at this rho.
    pub a: f64,
}

/// Solves `(p^2 + q^2)/sqrt(pq) = rho` for p in (0, 1/2] and evaluates
/// the extremal odd-moment ratio `A(rho) = ((q-p)/sqrt(pq))/rho`.
/// `A(1) = 0`, A is strictly increasing and tends to 1.
pub fn extremal_two_point(rho: f64) -> Result<ExtremalTwoPoint> {
    if rho < 1.0 - 1e-12 {
        return Err(Error::domain(format!(
            "rho must be >= 1 (impossible moment ordering otherwise), got {rho}"
        )));
    }
    if rho <= 1.0 {
        return Ok(ExtremalTwoPoint { p: 0.5, a: 0.0 });
    }
    let h = |p: f64| {
        let q = 1.0 - p;
        (p * p + q * q) / (p * q).sqrt()
    };
    // h decreases from +inf at p -> 0+ to 1 at p = 1/2
    let (mut lo, mut hi) = (1e-300, 0.5);
    while h(lo) < rho {
        lo /= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > rho {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 * hi {
            break;
        }
    }
    let p = 0.5 * (lo + hi);
    let q = 1.0 - p;
    Ok(ExtremalTwoPoint { p, a: ((q - p) / (p * q).sqrt()) / rho })
}
