//! Exact finite-lattice distribution engine: construction of the named
//! families, moments, convolution, compounding, and exact distances.
//! Every bound in the library is checked against this oracle.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::special::{normal_cdf, normal_pdf};
use crate::tol;

/// A probability law carried by finitely many atoms on `offset + k*step`.
/// `tail_mass_bound` bounds the mass truncated beyond the stored support
/// when the law came from an infinite family.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeDist {
    offset: f64,
    step: f64,
    weights: Vec<f64>,
    tail_mass_bound: f64,
}

/// Moment flavours of [`LatticeDist::moment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMode {
    /// E X^r, integer r only.
    Raw,
    /// E |X|^r.
    Absolute,
    /// E |X - EX|^r.
    CentralAbsolute,
}

/// Distribution descriptor as accepted by the CLI: either a named
/// family with parameters or an explicit atom list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistSpec {
    Named {
        family: String,
        #[serde(default)]
        params: BTreeMap<String, ParamValue>,
        #[serde(default)]
        tail_epsilon: Option<f64>,
    },
    Explicit {
        offset: f64,
        step: f64,
        weights: Vec<f64>,
        #[serde(default)]
        tail_mass_bound: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl ParamValue {
    fn scalar(&self, name: &str) -> Result<f64> {
        match self {
            ParamValue::Scalar(v) => Ok(*v),
            ParamValue::Vector(_) => Err(Error::domain(format!("parameter `{name}` must be a scalar"))),
        }
    }
    fn vector(&self, name: &str) -> Result<&[f64]> {
        match self {
            ParamValue::Vector(v) => Ok(v),
            ParamValue::Scalar(_) => Err(Error::domain(format!("parameter `{name}` must be a vector"))),
        }
    }
}

/// Compound-Poisson representation of a nonnegative-integer law: the
/// rate, the summand pmf, and the raw log-pgf coefficients.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    /// Rate of the Poisson index, `-ln P(N = 0)`.
    pub lambda: f64,
    /// Summand law on {1, 2, ...}; present only when the input is
    /// certified infinitely divisible within nonnegative-integer laws.
    pub y_dist: Option<LatticeDist>,
    /// Coefficients of the power-series logarithm of the pgf, from
    /// order 1 upward.
    pub gammas: Vec<f64>,
    /// Whether every log-pgf coefficient is nonnegative up to the
    /// certification tolerance.
    pub is_bdnc: bool,
}

/// Reference law for [`LatticeDist::kolmogorov_distance`].
#[derive(Debug, Clone, Copy)]
pub enum KolmogorovReference<'a> {
    Normal { mean: f64, sd: f64 },
    Lattice(&'a LatticeDist),
}

/// Lindeberg/Lyapunov-type truncated-moment fractions of a set of
/// centered summands.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedFractions {
    /// Normalized second moments beyond the threshold.
    pub l_n_eps: f64,
    /// Normalized third absolute moments inside the threshold.
    pub m_n_eps: f64,
    /// Standard deviation of the sum.
    pub b_n: f64,
}

impl LatticeDist {
    /// Builds a lattice law from raw parts, validating the invariants.
    pub fn new(offset: f64, step: f64, weights: Vec<f64>, tail_mass_bound: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::domain(format!("lattice step must be positive, got {step}")));
        }
        if !offset.is_finite() {
            return Err(Error::domain("lattice offset must be finite"));
        }
        if weights.is_empty() {
            return Err(Error::domain("lattice needs at least one atom"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::domain("lattice weights must be finite and nonnegative"));
        }
        if !(0.0..=1.0).contains(&tail_mass_bound) {
            return Err(Error::domain("tail mass bound must lie in [0, 1]"));
        }
        let total: f64 = weights.iter().sum::<f64>() + tail_mass_bound;
        if (total - 1.0).abs() > tol::LATTICE_MASS_TOL {
            return Err(Error::domain(format!(
                "weights plus tail must sum to 1 within {:.0e}, got {total}",
                tol::LATTICE_MASS_TOL
            )));
        }
        let mut d = LatticeDist { offset, step, weights, tail_mass_bound };
        d.trim();
        Ok(d)
    }

    fn trim(&mut self) {
        let first = self.weights.iter().position(|w| *w > 0.0).unwrap_or(0);
        let last = self.weights.iter().rposition(|w| *w > 0.0).unwrap_or(0);
        if first > 0 || last + 1 < self.weights.len() {
            self.offset += first as f64 * self.step;
            self.weights = self.weights[first..=last].to_vec();
        }
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }
    pub fn step(&self) -> f64 {
        self.step
    }
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn tail_mass_bound(&self) -> f64 {
        self.tail_mass_bound
    }
    pub fn len(&self) -> usize {
        self.weights.len()
    }
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Atom positions and weights, in increasing order of position.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(k, w)| (self.offset + k as f64 * self.step, *w))
    }

    // ---- named families -------------------------------------------------

    pub fn from_spec(spec: &DistSpec) -> Result<Self> {
        match spec {
            DistSpec::Explicit { offset, step, weights, tail_mass_bound } => {
                Self::new(*offset, *step, weights.clone(), *tail_mass_bound)
            }
            DistSpec::Named { family, params, tail_epsilon } => {
                let eps = tail_epsilon.unwrap_or(tol::DEFAULT_TAIL_EPSILON);
                let get = |name: &str| -> Result<f64> {
                    params
                        .get(name)
                        .ok_or_else(|| Error::domain(format!("family `{family}` needs parameter `{name}`")))?
                        .scalar(name)
                };
                match family.as_str() {
                    "symmetric_pm1" => Self::symmetric_pm1(),
                    "point_mass" => Self::point_mass(get("x")?),
                    "bernoulli" => Self::bernoulli(get("p")?),
                    "binomial" => Self::binomial(get("n")? as u32, get("p")?),
                    "poisson_binomial" => {
                        let ps = params
                            .get("p")
                            .ok_or_else(|| Error::domain("poisson_binomial needs parameter `p`"))?
                            .vector("p")?;
                        Self::poisson_binomial(ps)
                    }
                    "poisson" => Self::poisson(get("lambda")?, eps),
                    "negative_binomial" => Self::negative_binomial(get("r")?, get("p")?, eps),
                    "geometric" => Self::geometric(get("p")?, eps),
                    "logarithmic" => Self::logarithmic(get("q")?, eps),
                    "two_point_standardized" => Self::two_point_standardized(get("p")?),
                    other => Err(Error::domain(format!("unknown distribution family `{other}`"))),
                }
            }
        }
    }

    /// P(X = +1) = P(X = -1) = 1/2.
    pub fn symmetric_pm1() -> Result<Self> {
        Self::new(-1.0, 2.0, vec![0.5, 0.5], 0.0)
    }

    pub fn point_mass(x: f64) -> Result<Self> {
        Self::new(x, 1.0, vec![1.0], 0.0)
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::domain(format!("bernoulli needs p in (0,1], got {p}")));
        }
        Self::new(0.0, 1.0, vec![1.0 - p, p], 0.0)
    }

    pub fn binomial(n: u32, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("binomial needs n >= 1"));
        }
        Self::poisson_binomial(&vec![p; n as usize])
    }

    pub fn poisson_binomial(ps: &[f64]) -> Result<Self> {
        if ps.is_empty() {
            return Err(Error::domain("poisson_binomial needs at least one probability"));
        }
        if ps.iter().any(|p| !(*p > 0.0 && *p <= 1.0)) {
            return Err(Error::domain("poisson_binomial needs every p in (0,1]"));
        }
        let mut w = vec![1.0];
        for &p in ps {
            let mut next = vec![0.0; w.len() + 1];
            for (k, &wk) in w.iter().enumerate() {
                next[k] += wk * (1.0 - p);
                next[k + 1] += wk * p;
            }
            w = next;
        }
        Self::new(0.0, 1.0, w, 0.0)
    }

    /// Poisson law truncated so the omitted upper-tail mass is at most
    /// `eps`; the exact remainder is recorded as the tail bound.
    pub fn poisson(lambda: f64, eps: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain(format!("poisson needs lambda > 0, got {lambda}")));
        }
        let mut w = Vec::new();
        let mut term = (-lambda).exp();
        if term == 0.0 {
            return Err(Error::numeric("poisson rate too large for direct summation"));
        }
        let mut cum = 0.0;
        let mut k = 0usize;
        loop {
            w.push(term);
            cum += term;
            // once the term ratio drops below 1 the tail is geometric
            let ratio = lambda / (k as f64 + 1.0);
            if ratio < 1.0 && term * ratio / (1.0 - ratio) < eps {
                break;
            }
            if 1.0 - cum < eps && k as f64 > lambda {
                break;
            }
            term *= ratio;
            k += 1;
            if k > 2_000_000 {
                return Err(Error::numeric("poisson truncation did not terminate"));
            }
        }
        Self::new(0.0, 1.0, w, (1.0 - cum).max(0.0))
    }

    pub fn negative_binomial(r: f64, p: f64, eps: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::domain(format!("negative_binomial needs r > 0, got {r}")));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("negative_binomial needs p in (0,1), got {p}")));
        }
        let q = 1.0 - p;
        let mut w = Vec::new();
        let mut term = p.powf(r);
        let mut cum = 0.0;
        let mut k = 0usize;
        loop {
            w.push(term);
            cum += term;
            let ratio = q * (r + k as f64) / (k as f64 + 1.0);
            // per-step ratio tends to q monotonically; past its peak the
            // tail is dominated by a geometric series
            let rho = ratio.max(q);
            if rho < 1.0 && term * rho / (1.0 - rho) < eps {
                break;
            }
            term *= ratio;
            k += 1;
            if k > 2_000_000 {
                return Err(Error::numeric("negative_binomial truncation did not terminate"));
            }
        }
        Self::new(0.0, 1.0, w, (1.0 - cum).max(0.0))
    }

    pub fn geometric(p: f64, eps: f64) -> Result<Self> {
        Self::negative_binomial(1.0, p, eps)
    }

    /// Log-series law on {1, 2, ...}: P(Y = k) proportional to q^k / k.
    pub fn logarithmic(q: f64, eps: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!("logarithmic needs q in (0,1), got {q}")));
        }
        let p = 1.0 - q;
        let norm = -(1.0 / p.ln());
        let mut w = Vec::new();
        let mut cum = 0.0;
        let mut k = 1usize;
        let mut qk = q;
        loop {
            let term = norm * qk / k as f64;
            w.push(term);
            cum += term;
            if term * q / (1.0 - q) < eps {
                break;
            }
            qk *= q;
            k += 1;
            if k > 2_000_000 {
                return Err(Error::numeric("logarithmic truncation did not terminate"));
            }
        }
        Self::new(1.0, 1.0, w, (1.0 - cum).max(0.0))
    }

    /// Two-point law with mean 0 and variance 1: takes -sqrt(p/q) with
    /// probability q and sqrt(q/p) with probability p.
    pub fn two_point_standardized(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!(
                "two_point_standardized needs p in (0,1), got {p}"
            )));
        }
        let q = 1.0 - p;
        let lo = -(p / q).sqrt();
        let span = 1.0 / (p * q).sqrt();
        Self::new(lo, span, vec![q, p], 0.0)
    }

    // ---- moments ---------------------------------------------------------

    pub fn mean(&self) -> f64 {
        self.atoms().map(|(x, w)| x * w).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.atoms().map(|(x, w)| (x - m) * (x - m) * w).sum()
    }

    /// Moment of order `r` over the stored support. Truncated families
    /// under-report by at most the tail-mass contribution.
    pub fn moment(&self, r: f64, mode: MomentMode) -> Result<f64> {
        if r < 0.0 {
            return Err(Error::domain(format!("moment order must be >= 0, got {r}")));
        }
        match mode {
            MomentMode::Raw => {
                if r.fract() != 0.0 {
                    return Err(Error::domain(format!(
                        "raw moments need an integer order, got {r}"
                    )));
                }
                Ok(self.atoms().map(|(x, w)| w * x.powi(r as i32)).sum())
            }
            MomentMode::Absolute => Ok(self.atoms().map(|(x, w)| w * x.abs().powf(r)).sum()),
            MomentMode::CentralAbsolute => {
                let m = self.mean();
                Ok(self.atoms().map(|(x, w)| w * (x - m).abs().powf(r)).sum())
            }
        }
    }

    // ---- affine transforms -----------------------------------------------

    /// The law of `a + b X` for b > 0.
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain("affine scale must be positive"));
        }
        Self::new(a + b * self.offset, b * self.step, self.weights.clone(), self.tail_mass_bound)
    }

    /// Centers to mean zero.
    pub fn centered(&self) -> Result<Self> {
        self.affine(-self.mean(), 1.0)
    }

    /// Standardizes to mean zero and unit variance.
    pub fn standardized(&self) -> Result<Self> {
        let sd = self.variance().sqrt();
        if !(sd > 0.0) {
            return Err(Error::domain("cannot standardize a degenerate law"));
        }
        self.affine(-self.mean() / sd, 1.0 / sd)
    }

    // ---- lattice alignment -----------------------------------------------

    /// Common refinement step of two lattices whose steps must be
    /// integer multiples of one another within the relative tolerance.
    fn common_step(&self, other: &Self) -> Result<f64> {
        // a single atom imposes no step of its own
        if self.len() == 1 {
            return Ok(other.step);
        }
        if other.len() == 1 {
            return Ok(self.step);
        }
        let (hi, lo) = if self.step >= other.step {
            (self.step, other.step)
        } else {
            (other.step, self.step)
        };
        let ratio = hi / lo;
        let k = ratio.round();
        if k < 1.0 || (ratio - k).abs() > tol::STEP_RATIO_REL_TOL * ratio {
            return Err(Error::structural(format!(
                "incommensurable lattice steps {} and {}",
                self.step, other.step
            )));
        }
        Ok(lo)
    }

    /// Index of position `x` on the grid `base + k*h`, checked to land
    /// on a grid point within tolerance.
    fn grid_index(x: f64, base: f64, h: f64) -> Result<usize> {
        let t = (x - base) / h;
        let k = t.round();
        if (t - k).abs() > 1e-6 || k < -0.5 {
            return Err(Error::structural(
                "atom does not land on the common lattice".to_string(),
            ));
        }
        Ok(k as usize)
    }

    // ---- convolution -----------------------------------------------------

    /// Exact distribution of the sum of two independent lattice laws.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let h = self.common_step(other)?;
        let k1 = (self.step / h).round() as usize;
        let k2 = (other.step / h).round() as usize;
        let n = (self.len() - 1) * k1 + (other.len() - 1) * k2 + 1;
        let mut w = vec![0.0; n];
        for (i, &wi) in self.weights.iter().enumerate() {
            if wi == 0.0 {
                continue;
            }
            for (j, &wj) in other.weights.iter().enumerate() {
                w[i * k1 + j * k2] += wi * wj;
            }
        }
        let tail = (self.tail_mass_bound + other.tail_mass_bound).min(1.0);
        // renormalization drift from the tails stays inside the bound
        let sum: f64 = w.iter().sum();
        let tail = tail.max(1.0 - sum).min(1.0);
        Self::new(self.offset + other.offset, h, w, tail)
    }

    /// n-fold convolution of the law with itself, n >= 1, by binary
    /// exponentiation.
    pub fn self_convolve(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("self_convolve needs n >= 1"));
        }
        let mut result: Option<LatticeDist> = None;
        let mut base = self.clone();
        let mut m = n;
        loop {
            if m & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.convolve(&base)?,
                });
            }
            m >>= 1;
            if m == 0 {
                break;
            }
            base = base.convolve(&base)?;
        }
        Ok(result.unwrap())
    }

    /// Mixture sum of weighted lattice components on a common grid.
    fn mixture(components: &[(f64, LatticeDist)]) -> Result<Self> {
        let first = &components
            .first()
            .ok_or_else(|| Error::domain("mixture needs at least one component"))?
            .1;
        // common step must divide every component step and every offset
        // difference
        let mut h = first.step;
        let scale: f64 = components
            .iter()
            .map(|(_, d)| d.step.max(d.offset.abs()))
            .fold(first.step, f64::max);
        for (_, d) in components {
            if d.len() > 1 {
                h = real_gcd(h, d.step, scale)?;
            }
            let off = (d.offset - first.offset).abs();
            if off > 1e-12 * scale.max(1.0) {
                h = real_gcd(h, off, scale)?;
            }
        }
        let lo = components
            .iter()
            .map(|(_, d)| d.offset)
            .fold(f64::INFINITY, f64::min);
        let hi = components
            .iter()
            .map(|(_, d)| d.offset + (d.len() - 1) as f64 * d.step)
            .fold(f64::NEG_INFINITY, f64::max);
        let n = ((hi - lo) / h).round() as usize + 1;
        if n > 50_000_000 {
            return Err(Error::structural("common lattice refinement is too fine"));
        }
        let mut w = vec![0.0; n];
        let mut tail = 0.0;
        let mut total_coef = 0.0;
        for (coef, d) in components {
            total_coef += coef;
            tail += coef * d.tail_mass_bound;
            for (x, wx) in d.atoms() {
                w[Self::grid_index(x, lo, h)?] += coef * wx;
            }
        }
        // mass not covered by the listed components
        tail += (1.0 - total_coef).max(0.0);
        Self::new(lo, h, w, tail.min(1.0))
    }

    /// Distribution of a random sum: `index` counts how many independent
    /// copies of `summand` are added (the empty sum is the point mass at
    /// zero).
    pub fn compound(index: &Self, summand: &Self) -> Result<Self> {
        // the index must sit on the nonnegative integers
        let mut counts = Vec::new();
        for (x, w) in index.atoms() {
            let k = x.round();
            if (x - k).abs() > 1e-9 || k < -0.5 {
                return Err(Error::domain(
                    "compound index must be supported on nonnegative integers".to_string(),
                ));
            }
            counts.push((k as u32, w));
        }
        let n_max = counts.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let mut components: Vec<(f64, LatticeDist)> = Vec::new();
        let mut power = Self::point_mass(0.0)?;
        let mut by_count: BTreeMap<u32, f64> = BTreeMap::new();
        for (k, w) in counts {
            *by_count.entry(k).or_insert(0.0) += w;
        }
        for n in 0..=n_max {
            if n > 0 {
                power = power.convolve(summand)?;
            }
            if let Some(&w) = by_count.get(&n) {
                if w > 0.0 {
                    components.push((w, power.clone()));
                }
            }
        }
        let mut out = Self::mixture(&components)?;
        out.tail_mass_bound = (out.tail_mass_bound + index.tail_mass_bound).min(1.0);
        Ok(out)
    }

    // ---- distances ---------------------------------------------------------

    /// Exact uniform distance between the CDF of the law and a
    /// reference, evaluated from both sides of every atom. Between
    /// atoms the step CDF is constant and the continuous reference is
    /// monotone, so |F - G| on each open interval is largest at an
    /// endpoint; the supremum is therefore attained among the
    /// one-sided values at the atoms.
    pub fn kolmogorov_distance(&self, reference: KolmogorovReference<'_>) -> Result<f64> {
        match reference {
            KolmogorovReference::Normal { mean, sd } => {
                if !(sd > 0.0) {
                    return Err(Error::domain("normal reference needs sd > 0"));
                }
                let mut cum = 0.0;
                let mut sup: f64 = 0.0;
                for (x, w) in self.atoms() {
                    let g = normal_cdf((x - mean) / sd);
                    sup = sup.max((cum - g).abs()).max((cum + w - g).abs());
                    cum += w;
                }
                Ok(sup)
            }
            KolmogorovReference::Lattice(other) => {
                let (w1, w2) = self.aligned_pair(other)?;
                let mut c = 0.0;
                let mut sup: f64 = 0.0;
                for (a, b) in w1.iter().zip(w2.iter()) {
                    c += a - b;
                    sup = sup.max(c.abs());
                }
                Ok(sup)
            }
        }
    }

    /// Dense weights of both laws on their merged common lattice.
    fn aligned_pair(&self, other: &Self) -> Result<(Vec<f64>, Vec<f64>)> {
        let h = {
            // also require the offsets to agree modulo the common step
            let base_h = self.common_step(other)?;
            let scale = self.step.max(other.step).max(1.0);
            let off = (self.offset - other.offset).abs();
            if off > 1e-12 * scale {
                real_gcd(base_h, off, scale)?
            } else {
                base_h
            }
        };
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + (self.len() - 1) as f64 * self.step)
            .max(other.offset + (other.len() - 1) as f64 * other.step);
        let n = ((hi - lo) / h).round() as usize + 1;
        if n > 50_000_000 {
            return Err(Error::structural("common lattice refinement is too fine"));
        }
        let mut w1 = vec![0.0; n];
        let mut w2 = vec![0.0; n];
        for (x, w) in self.atoms() {
            w1[Self::grid_index(x, lo, h)?] += w;
        }
        for (x, w) in other.atoms() {
            w2[Self::grid_index(x, lo, h)?] += w;
        }
        Ok((w1, w2))
    }

    /// Exact total-variation distance: half the l1 distance between the
    /// pmfs over the merged support. Truncation contributes at most
    /// half the combined tail bounds on top of the returned value.
    pub fn tv_distance(&self, other: &Self) -> Result<f64> {
        let (w1, w2) = self.aligned_pair(other)?;
        Ok(0.5 * w1.iter().zip(w2.iter()).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }

    /// Half the combined truncation bounds; the error bar to report
    /// alongside [`tv_distance`].
    pub fn tv_error_bar(&self, other: &Self) -> f64 {
        0.5 * (self.tail_mass_bound + other.tail_mass_bound)
    }

    /// L1 distance between the CDF of the law and the standard normal
    /// CDF, by exact piecewise integration between atoms.
    pub fn zeta1_distance_to_normal(&self) -> Result<f64> {
        let atoms: Vec<(f64, f64)> = self.atoms().filter(|(_, w)| *w > 0.0).collect();
        let x0 = atoms[0].0;
        // below the support the CDF is 0
        let mut total = x0 * normal_cdf(x0) + normal_pdf(x0);
        let mut cum = 0.0;
        for i in 0..atoms.len() {
            cum += atoms[i].1;
            if i + 1 < atoms.len() {
                total += segment_abs_integral(atoms[i].0, atoms[i + 1].0, cum.min(1.0));
            }
        }
        // above the support the CDF is 1 (up to the tail bound)
        let xm = atoms[atoms.len() - 1].0;
        total += normal_pdf(xm) - xm * normal_cdf(-xm);
        Ok(total)
    }

    /// Lindeberg and truncated-third-moment fractions of a family of
    /// centered summands at threshold `eps`.
    pub fn lindeberg_osipov_fractions(ds: &[LatticeDist], eps: f64) -> Result<TruncatedFractions> {
        if !(eps > 0.0) {
            return Err(Error::domain("threshold must be positive"));
        }
        let b2: f64 = ds.iter().map(|d| d.variance()).sum();
        if !(b2 > 0.0) {
            return Err(Error::domain("all summands are degenerate"));
        }
        let b_n = b2.sqrt();
        let cut = eps * b_n;
        let mut l = 0.0;
        let mut m = 0.0;
        for d in ds {
            for (x, w) in d.atoms() {
                if x.abs() > cut {
                    l += w * x * x;
                } else {
                    m += w * x.abs().powi(3);
                }
            }
        }
        Ok(TruncatedFractions { l_n_eps: l / b2, m_n_eps: m / (b2 * b_n), b_n })
    }

    /// Compound-Poisson decomposition of a nonnegative-integer law via
    /// the power-series logarithm of its pgf.
    pub fn bdnc_decompose(&self) -> Result<DecompositionResult> {
        // densify onto {0, 1, 2, ...}
        let mut p = Vec::new();
        for (x, w) in self.atoms() {
            let k = x.round();
            if (x - k).abs() > 1e-9 || k < -0.5 {
                return Err(Error::domain(
                    "decomposition needs a law on the nonnegative integers".to_string(),
                ));
            }
            let k = k as usize;
            if k >= p.len() {
                p.resize(k + 1, 0.0);
            }
            p[k] += w;
        }
        if p[0] <= 0.0 {
            return Err(Error::domain(
                "a compound-Poisson representation requires positive mass at zero".to_string(),
            ));
        }
        let lambda = -p[0].ln();
        // gamma_n = (n p_n - sum_{k=1}^{n-1} k gamma_k p_{n-k}) / (n p_0)
        let m = p.len() - 1;
        let mut gammas = vec![0.0; m];
        for n in 1..=m {
            let mut s = n as f64 * p[n];
            for k in 1..n {
                s -= k as f64 * gammas[k - 1] * p[n - k];
            }
            gammas[n - 1] = s / (n as f64 * p[0]);
        }
        let is_bdnc = gammas.iter().all(|g| *g >= -tol::LATTICE_MASS_TOL);
        let y_dist = if is_bdnc && lambda > 0.0 {
            let w: Vec<f64> = gammas.iter().map(|g| g.max(0.0) / lambda).collect();
            let sum: f64 = w.iter().sum();
            Some(LatticeDist::new(1.0, 1.0, w, (1.0 - sum).max(0.0))?)
        } else {
            None
        };
        Ok(DecompositionResult { lambda, y_dist, gammas, is_bdnc })
    }
}

/// Euclid's algorithm on positive reals with a relative tolerance;
/// rejects pairs whose approximate gcd collapses below resolution.
fn real_gcd(a: f64, b: f64, scale: f64) -> Result<f64> {
    let tol_abs = tol::STEP_RATIO_REL_TOL * scale.max(1e-300);
    let (mut a, mut b) = (a.abs().max(b.abs()), a.abs().min(b.abs()));
    for _ in 0..64 {
        if b <= tol_abs {
            break;
        }
        let r = a % b;
        let r = r.min((b - r).abs());
        a = b;
        b = if r <= tol_abs { 0.0 } else { r };
    }
    if b > tol_abs {
        return Err(Error::structural(format!(
            "no common lattice refinement found for spacings {a} and {b}"
        )));
    }
    if a <= 1e-7 * scale {
        return Err(Error::structural(
            "common lattice refinement is below resolution; treating inputs as incommensurable"
                .to_string(),
        ));
    }
    Ok(a)
}

/// Integral of |c - Phi(x)| over [a, b] for constant c in [0, 1].
fn segment_abs_integral(a: f64, b: f64, c: f64) -> f64 {
    // antiderivative of Phi
    let big_phi = |x: f64| x * normal_cdf(x) + normal_pdf(x);
    let fa = normal_cdf(a);
    let fb = normal_cdf(b);
    if fb <= c {
        c * (b - a) - (big_phi(b) - big_phi(a))
    } else if fa >= c {
        (big_phi(b) - big_phi(a)) - c * (b - a)
    } else {
        // bisection for the sign change of Phi(x) - c
        let (mut lo, mut hi) = (a, b);
        while hi - lo > tol::ZETA1_BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if normal_cdf(mid) < c {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = 0.5 * (lo + hi);
        (c * (r - a) - (big_phi(r) - big_phi(a))) + ((big_phi(b) - big_phi(r)) - c * (b - r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::normal_cdf;

    #[test]
    fn invariants_enforced() {
        assert!(LatticeDist::new(0.0, 0.0, vec![1.0], 0.0).is_err());
        assert!(LatticeDist::new(0.0, 1.0, vec![0.5, 0.4], 0.0).is_err());
        assert!(LatticeDist::new(0.0, 1.0, vec![-0.1, 1.1], 0.0).is_err());
        assert!(LatticeDist::new(0.0, 1.0, vec![0.5, 0.4], 0.1).is_ok());
    }

    #[test]
    fn family_constructors() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        assert_eq!((s.offset(), s.step()), (-1.0, 2.0));
        let t = LatticeDist::two_point_standardized(0.5).unwrap();
        assert!((t.offset() - -1.0).abs() < 1e-15);
        assert!((t.step() - 2.0).abs() < 1e-15);
        assert!(t.mean().abs() < 1e-15);
        assert!((t.variance() - 1.0).abs() < 1e-15);

        let log = LatticeDist::logarithmic(0.5, 1e-12).unwrap();
        assert!((log.mean() - 1.0 / std::f64::consts::LN_2).abs() < 1e-10);

        assert!(LatticeDist::bernoulli(0.0).is_err());
        assert!(LatticeDist::poisson(-1.0, 1e-12).is_err());
        assert!(LatticeDist::negative_binomial(0.0, 0.5, 1e-12).is_err());
    }

    #[test]
    fn moments() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        assert_eq!(s.moment(3.0, MomentMode::Absolute).unwrap(), 1.0);
        assert_eq!(s.moment(0.0, MomentMode::Raw).unwrap(), 1.0);
        assert!(s.moment(1.5, MomentMode::Raw).is_err());
        let p = LatticeDist::poisson(2.0, 1e-14).unwrap();
        assert!((p.moment(2.0, MomentMode::Raw).unwrap() - 6.0).abs() < 1e-10);
    }

    #[test]
    fn convolution_small() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        let s2 = s.self_convolve(2).unwrap();
        let atoms: Vec<_> = s2.atoms().collect();
        assert_eq!(atoms.len(), 3);
        assert_eq!(atoms[0], (-2.0, 0.25));
        assert_eq!(atoms[1], (0.0, 0.5));
        assert_eq!(atoms[2], (2.0, 0.25));
    }

    #[test]
    fn convolution_rejects_incommensurable() {
        let a = LatticeDist::new(0.0, 1.0, vec![0.5, 0.5], 0.0).unwrap();
        let b = LatticeDist::new(0.0, std::f64::consts::SQRT_2, vec![0.5, 0.5], 0.0).unwrap();
        assert!(a.convolve(&b).is_err());
    }

    #[test]
    fn compound_point_mass_is_index() {
        let idx = LatticeDist::poisson(1.0, 1e-13).unwrap();
        let one = LatticeDist::point_mass(1.0).unwrap();
        let c = LatticeDist::compound(&idx, &one).unwrap();
        let t = idx.tv_distance(&c).unwrap();
        assert!(t < 1e-12, "{t}");
    }

    #[test]
    fn kolmogorov_against_self_and_normal() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        assert_eq!(s.kolmogorov_distance(KolmogorovReference::Lattice(&s)).unwrap(), 0.0);
        let d = s
            .kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
            .unwrap();
        assert!((d - (normal_cdf(1.0) - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn zeta1_point_mass() {
        let d = LatticeDist::point_mass(0.0).unwrap();
        let z = d.zeta1_distance_to_normal().unwrap();
        assert!((z - 2.0 * crate::special::normal_pdf(0.0)).abs() < 1e-10);
    }

    #[test]
    fn bdnc_of_poisson_is_point_mass() {
        let p = LatticeDist::poisson(1.5, 1e-14).unwrap();
        let dec = p.bdnc_decompose().unwrap();
        assert!(dec.is_bdnc);
        assert!((dec.lambda - 1.5).abs() < 1e-10);
        let y = dec.y_dist.unwrap();
        assert!((y.weights()[0] - 1.0).abs() < 1e-9);
        assert!(y.weights().iter().skip(1).all(|w| *w < 1e-9));
    }

    #[test]
    fn bdnc_rejects_no_zero_atom() {
        let d = LatticeDist::new(1.0, 1.0, vec![0.5, 0.5], 0.0).unwrap();
        assert!(d.bdnc_decompose().is_err());
    }

    #[test]
    fn binomial_is_not_bdnc() {
        let b = LatticeDist::binomial(2, 0.5).unwrap();
        let dec = b.bdnc_decompose().unwrap();
        assert!(!dec.is_bdnc);
        assert!(dec.gammas.iter().any(|g| *g < -1e-6));
    }

    #[test]
    fn lindeberg_saturated_indicator() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        let ds = vec![s; 4];
        let fr = LatticeDist::lindeberg_osipov_fractions(&ds, 10.0).unwrap();
        assert_eq!(fr.l_n_eps, 0.0);
        assert!((fr.m_n_eps - 0.5).abs() < 1e-12); // n^{-1/2} at n = 4
    }

    #[test]
    fn spec_parsing() {
        let spec: DistSpec =
            serde_json::from_str(r#"{"family":"poisson","params":{"lambda":2.0}}"#).unwrap();
        let d = LatticeDist::from_spec(&spec).unwrap();
        assert!((d.mean() - 2.0).abs() < 1e-9);
        let spec: DistSpec =
            serde_json::from_str(r#"{"offset":-1.0,"step":2.0,"weights":[0.5,0.5]}"#).unwrap();
        let d = LatticeDist::from_spec(&spec).unwrap();
        assert_eq!(d.weights(), &[0.5, 0.5]);
        let spec: DistSpec =
            serde_json::from_str(r#"{"family":"poisson_binomial","params":{"p":[0.1,0.2]}}"#)
                .unwrap();
        let d = LatticeDist::from_spec(&spec).unwrap();
        assert!((d.mean() - 0.3).abs() < 1e-12);
    }
}
