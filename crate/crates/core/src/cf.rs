//! Characteristic-function toolkit: a catalog of closed-form
//! characteristic functions, moment bounds on Taylor remainders of the
//! complex exponential, numeric CDF inversion, and the smoothing
//! inequalities that convert characteristic-function closeness into a
//! uniform distance bound.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::LatticeDist;
use crate::quad;
use crate::tol;

/// Metadata attached to a characteristic function.
#[derive(Debug, Clone)]
pub struct CfMeta {
    pub is_symmetric: bool,
    pub abs_integrable: bool,
    pub description: String,
}

/// A characteristic function together with its metadata. Construction
/// samples the function to confirm `eval(0) = 1`, modulus at most 1,
/// and (when claimed) symmetry.
pub struct CharFn {
    eval: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
    pub meta: CfMeta,
}

impl CharFn {
    pub fn new<F>(eval: F, meta: CfMeta) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        let cf = CharFn { eval: Box::new(eval), meta };
        let at0 = cf.eval(0.0);
        if (at0 - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(Error::domain(format!(
                "characteristic function must equal 1 at t = 0, got {at0}"
            )));
        }
        for i in -20..=20 {
            let t = i as f64 * 0.5;
            let v = cf.eval(t);
            if v.norm() > 1.0 + 1e-12 {
                return Err(Error::domain(format!(
                    "characteristic function exceeds modulus 1 at t = {t}"
                )));
            }
            if cf.meta.is_symmetric && v.im.abs() > 1e-12 {
                return Err(Error::domain(format!(
                    "claimed-symmetric characteristic function has imaginary part at t = {t}"
                )));
            }
        }
        Ok(cf)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        (self.eval)(t)
    }

    // ---- catalog ----------------------------------------------------------

    /// Normal law with mean `a` and variance `sigma2`.
    pub fn normal(a: f64, sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0) {
            return Err(Error::domain("normal needs sigma2 > 0"));
        }
        Self::new(
            move |t| (Complex64::new(-0.5 * sigma2 * t * t, a * t)).exp(),
            CfMeta {
                is_symmetric: a == 0.0,
                abs_integrable: true,
                description: format!("normal(a={a}, sigma2={sigma2})"),
            },
        )
    }

    /// Gamma law with shape `alpha` and rate `lambda`.
    pub fn gamma(alpha: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0 && lambda > 0.0) {
            return Err(Error::domain("gamma needs alpha > 0 and lambda > 0"));
        }
        Self::new(
            move |t| (Complex64::new(lambda, 0.0) / Complex64::new(lambda, -t)).powf(alpha),
            CfMeta {
                is_symmetric: false,
                abs_integrable: alpha > 1.0,
                description: format!("gamma(alpha={alpha}, lambda={lambda})"),
            },
        )
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        Self::gamma(1.0, lambda)
    }

    /// Two-sided exponential with parameter `lambda`.
    pub fn laplace(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain("laplace needs lambda > 0"));
        }
        let l2 = lambda * lambda;
        Self::new(
            move |t| Complex64::new(l2 / (l2 + t * t), 0.0),
            CfMeta {
                is_symmetric: true,
                abs_integrable: true,
                description: format!("laplace(lambda={lambda})"),
            },
        )
    }

    /// The compactly supported tent `(1 - |t|)^+`, the classical
    /// smoothing filter.
    pub fn triangular() -> Result<Self> {
        Self::new(
            |t| Complex64::new((1.0 - t.abs()).max(0.0), 0.0),
            CfMeta {
                is_symmetric: true,
                abs_integrable: true,
                description: "triangular".to_string(),
            },
        )
    }

    /// Uniform law on [a, b].
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !(b > a) {
            return Err(Error::domain("uniform needs b > a"));
        }
        Self::new(
            move |t| {
                if t.abs() < 1e-10 {
                    // series of (e^{itb} - e^{ita}) / (it(b-a))
                    let m = 0.5 * (a + b);
                    Complex64::new(1.0 - t * t * (b - a) * (b - a) / 24.0, t * m)
                } else {
                    (Complex64::new(0.0, t * b).exp() - Complex64::new(0.0, t * a).exp())
                        / Complex64::new(0.0, t * (b - a))
                }
            },
            CfMeta {
                is_symmetric: a == -b,
                abs_integrable: false,
                description: format!("uniform({a}, {b})"),
            },
        )
    }

    pub fn poisson(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain("poisson needs lambda > 0"));
        }
        Self::new(
            move |t| ((Complex64::new(0.0, t).exp() - 1.0) * lambda).exp(),
            CfMeta {
                is_symmetric: false,
                abs_integrable: false,
                description: format!("poisson(lambda={lambda})"),
            },
        )
    }

    pub fn cauchy() -> Result<Self> {
        Self::new(
            |t| Complex64::new((-t.abs()).exp(), 0.0),
            CfMeta {
                is_symmetric: true,
                abs_integrable: true,
                description: "cauchy".to_string(),
            },
        )
    }

    /// Random sum with Poisson index: `exp(lambda (f(t) - 1))`.
    pub fn compound_poisson(lambda: f64, inner: CharFn) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain("compound_poisson needs lambda > 0"));
        }
        let symmetric = inner.meta.is_symmetric;
        let desc = format!("compound_poisson(lambda={lambda}, {})", inner.meta.description);
        Self::new(
            move |t| ((inner.eval(t) - 1.0) * lambda).exp(),
            CfMeta { is_symmetric: symmetric, abs_integrable: false, description: desc },
        )
    }

    /// Finite trigonometric sum for a lattice law.
    pub fn from_lattice(d: &LatticeDist) -> Result<Self> {
        let atoms: Vec<(f64, f64)> = d.atoms().collect();
        let symmetric = {
            let mut rev: Vec<(f64, f64)> = atoms.iter().map(|(x, w)| (-x, *w)).collect();
            rev.reverse();
            atoms
                .iter()
                .zip(rev.iter())
                .all(|(a, b)| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12)
        };
        Self::new(
            move |t| {
                let mut s = Complex64::new(0.0, 0.0);
                for &(x, w) in &atoms {
                    s += Complex64::new(0.0, t * x).exp() * w;
                }
                s
            },
            CfMeta {
                is_symmetric: symmetric,
                abs_integrable: false,
                description: "lattice".to_string(),
            },
        )
    }

    /// A standardized n-fold sum of the given law, as a characteristic
    /// function: `f((t - shift adjustments)/scale)^n` with the affine
    /// standardization folded in.
    pub fn standardized_sum(d: &LatticeDist, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("standardized_sum needs n >= 1"));
        }
        let mean = d.mean();
        let sd = d.variance().sqrt();
        if !(sd > 0.0) {
            return Err(Error::domain("standardized_sum needs a nondegenerate law"));
        }
        let b_n = sd * (n as f64).sqrt();
        let single = Self::from_lattice(d)?;
        let nn = n as i32;
        Self::new(
            move |t| {
                let phase = Complex64::new(0.0, -t * mean * n as f64 / b_n).exp();
                phase * single.eval(t / b_n).powi(nn)
            },
            CfMeta {
                is_symmetric: false,
                abs_integrable: false,
                description: format!("standardized {n}-fold sum"),
            },
        )
    }
}

/// Which Taylor-remainder estimate to evaluate.
#[derive(Debug, Clone, Copy)]
pub enum TaylorVariant {
    /// `|e^{ix} - sum_{k<=n} (ix)^k/k!|` against `C(n, delta) |x|^{n+delta}`.
    Plain { delta: f64 },
    /// Remainder with a fraction of the n-th term kept on the left, per
    /// the sharpened estimate; requires n >= 1.
    Prawitz,
}

#[derive(Debug, Clone, Copy)]
pub struct TaylorRemainder {
    pub remainder_abs: f64,
    pub bound: f64,
}

/// Tail of the exponential series from order `k0`:
/// `sum_{k >= k0} (ix)^k / k!`. Summing the tail directly avoids the
/// cancellation of subtracting a partial sum from `e^{ix}`.
fn exp_series_tail(x: f64, k0: u32) -> Complex64 {
    let ix = Complex64::new(0.0, x);
    // term at k0
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..=k0 {
        term *= ix / k as f64;
    }
    let mut sum = term;
    let mut k = k0 + 1;
    loop {
        term *= ix / k as f64;
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) && k as f64 > x.abs() {
            return sum;
        }
        k += 1;
        if k > 10_000 {
            return sum;
        }
    }
}

/// Factorial as f64 (small n).
fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// Moment-type estimates for Taylor remainders of `e^{ix}`, returning
/// the exact remainder modulus alongside its guaranteed bound.
pub fn taylor_remainder(x: f64, n: u32, variant: TaylorVariant) -> Result<TaylorRemainder> {
    match variant {
        TaylorVariant::Plain { delta } => {
            if !(delta > 0.0 && delta <= 1.0) {
                return Err(Error::domain(format!("delta must lie in (0,1], got {delta}")));
            }
            let remainder_abs = exp_series_tail(x, n + 1).norm();
            let mut c = (1.0 - delta).exp2();
            for k in 1..=n {
                c /= k as f64 + delta;
            }
            Ok(TaylorRemainder { remainder_abs, bound: c * x.abs().powf(n as f64 + delta) })
        }
        TaylorVariant::Prawitz => {
            if n == 0 {
                return Err(Error::domain("the sharpened remainder estimate needs n >= 1"));
            }
            let nf = n as f64;
            let keep = nf / (2.0 * (nf + 1.0));
            // r_n(x) - keep * (ix)^n/n!  =  (1-keep)(ix)^n/n! + tail from n+1
            let ix = Complex64::new(0.0, x);
            let lead = ix.powu(n) / factorial(n);
            let remainder_abs = (lead * (1.0 - keep) + exp_series_tail(x, n + 1)).norm();
            let bound = (nf + 2.0) / (2.0 * (nf + 1.0)) * x.abs().powi(n as i32) / factorial(n);
            Ok(TaylorRemainder { remainder_abs, bound })
        }
    }
}

/// Inversion of a characteristic function to the symmetrized CDF value
/// `(F(x+0) + F(x-0))/2`, via the principal-value integral with cutoffs
/// `[h_min, t_max]`. The oscillatory tail is summed over half-period
/// panels with convergence acceleration.
pub fn invert_cdf(f: &CharFn, x: f64, t_max: f64, h_min: f64) -> Result<f64> {
    if !(t_max > 0.0) || !(h_min > 0.0) || h_min >= t_max {
        return Err(Error::domain("invert_cdf needs 0 < h_min < t_max"));
    }
    // pairing t with -t reduces the integral to a real one
    let integrand = |t: f64| -(Complex64::new(0.0, -t * x).exp() * f.eval(t)).im / t;
    let smooth_cap = t_max.min(40.0);
    let mut integral = quad::integrate(&integrand, h_min, smooth_cap, tol::QUAD_ABS_TOL)?;
    if smooth_cap < t_max {
        // non-decaying (lattice-type) tails are summed in the Cesaro
        // sense; the panel length resolves oscillation frequencies up
        // to roughly 30
        integral += quad::riesz_tail(&integrand, smooth_cap, t_max, 0.5)?;
    }
    let value = 0.5 + integral / PI;
    if !(-0.01..=1.01).contains(&value) {
        return Err(Error::numeric(format!(
            "inversion produced {value}, outside [0,1]; the tail integral has not converged"
        )));
    }
    Ok(value)
}

/// Smoothing bound on `sup |F - G|` from the characteristic functions:
/// `(b/2pi) int_{-T}^{T} |f - g|/|t| dt + 4b(b+1)A/(pi(b-1)T)`, where
/// `A` bounds `sup |G'|`, valid for every `b > 1` and `T > 0`.
pub fn feller_bound(f: &CharFn, g: &CharFn, a_sup: f64, t_up: f64, b: f64) -> Result<f64> {
    if !(b > 1.0) {
        return Err(Error::domain(format!("feller_bound needs b > 1, got {b}")));
    }
    if !(t_up > 0.0) || !(a_sup >= 0.0) {
        return Err(Error::domain("feller_bound needs T > 0 and A >= 0"));
    }
    let h = tol::FELLER_SMALL_T;
    let diff = |t: f64| f.eval(t) - g.eval(t);
    // two-term Maclaurin of (f-g)/t near zero, from differenced values
    let d1 = (diff(h) - diff(-h)) / (2.0 * h);
    let d2 = (diff(h) + diff(-h)) / (h * h);
    let integrand = move |t: f64| {
        if t.abs() < h {
            (d1 + d2 * (0.5 * t)).norm()
        } else {
            diff(t).norm() / t.abs()
        }
    };
    let integral = 2.0 * quad::integrate(integrand, 0.0, t_up, tol::QUAD_ABS_TOL)?;
    Ok(b / (2.0 * PI) * integral + 4.0 * b * (b + 1.0) * a_sup / (PI * (b - 1.0) * t_up))
}

/// The signed smoothing kernel on (-1, 1) \ {0}.
pub fn prawitz_kernel(t: f64) -> Result<Complex64> {
    let at = t.abs();
    if !(at >= tol::PRAWITZ_MIN_T && at < 1.0) {
        return Err(Error::domain(format!(
            "kernel argument must satisfy {:.0e} <= |t| < 1, got {t}",
            tol::PRAWITZ_MIN_T
        )));
    }
    let cot = (PI * t).cos() / (PI * t).sin();
    Ok(Complex64::new(
        0.5 * (1.0 - at),
        0.5 * ((1.0 - at) * cot + t.signum() / PI),
    ))
}

/// `K(t) - i/(2 pi t)`: the kernel with its pole removed, bounded by
/// `(1 - |t| + pi^2 t^2 / 18)/2`.
pub fn prawitz_kernel_minus_pole(t: f64) -> Result<Complex64> {
    Ok(prawitz_kernel(t)? - Complex64::new(0.0, 1.0 / (2.0 * PI * t)))
}

/// Four-integral kernel-smoothing bound on `sup |F - Phi|` for a law
/// with characteristic function `f`, at cutoff `T > 0` and split point
/// `t0` in (0, 1].
pub fn prawitz_rho_bound(f: &CharFn, t_cap: f64, t0: f64) -> Result<f64> {
    prawitz_rho_bound_tol(f, t_cap, t0, tol::QUAD_ABS_TOL)
}

fn prawitz_rho_bound_tol(f: &CharFn, t_cap: f64, t0: f64, quad_tol: f64) -> Result<f64> {
    if !(t_cap > 0.0) {
        return Err(Error::domain("prawitz_rho_bound needs T > 0"));
    }
    if !(t0 > 0.0 && t0 <= 1.0) {
        return Err(Error::domain("prawitz_rho_bound needs t0 in (0, 1]"));
    }
    let lo = tol::PRAWITZ_MIN_T;
    let gauss = |t: f64| (-0.5 * t_cap * t_cap * t * t).exp();
    let i1 = quad::integrate(
        |t| prawitz_kernel(t).unwrap().norm() * (f.eval(t_cap * t) - gauss(t)).norm(),
        lo,
        t0,
        quad_tol,
    )?;
    let i2 = if t0 < 1.0 {
        quad::integrate(
            |t| prawitz_kernel(t).unwrap().norm() * f.eval(t_cap * t).norm(),
            t0,
            1.0 - 1e-12,
            quad_tol,
        )?
    } else {
        0.0
    };
    let i3 =
        quad::integrate(|t| prawitz_kernel_minus_pole(t).unwrap().norm() * gauss(t), lo, t0, quad_tol)?;
    let u0 = t_cap * t0;
    let i4 = if u0 >= 40.0 {
        0.0
    } else {
        quad::integrate(|u| (-0.5 * u * u).exp() / u, u0, 40.0, quad_tol)?
    };
    Ok(2.0 * i1 + 2.0 * i2 + 2.0 * i3 + i4 / PI)
}

/// Documented search grid of the two-parameter optimizer.
pub const PRAWITZ_T_GRID: [f64; 12] =
    [2.0, 3.0, 4.5, 7.0, 10.0, 15.0, 22.0, 33.0, 50.0, 75.0, 110.0, 160.0];
pub const PRAWITZ_T0_GRID: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

/// Best kernel-smoothing bound over the documented `(T, t0)` grid.
/// Every grid point yields a valid upper bound, so the minimum does too.
pub fn prawitz_rho_bound_optimized(f: &CharFn) -> Result<(f64, f64, f64)> {
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &t_cap in &PRAWITZ_T_GRID {
        for &t0 in &PRAWITZ_T0_GRID {
            let v = prawitz_rho_bound_tol(f, t_cap, t0, 1e-7)?;
            if v < best.0 {
                best = (v, t_cap, t0);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy)]
pub struct CfCltBounds {
    /// Bound on the modulus of the standardized-sum characteristic
    /// function.
    pub modulus_bound: f64,
    /// Bound on its distance to the normal characteristic function,
    /// valid for `|t| <= d / l3`.
    pub diff_bound: Option<f64>,
}

/// Exponential envelopes for the characteristic function of a
/// standardized sum with third-moment Lyapunov fraction `l3`.
pub fn clt_cf_bounds(l3: f64, t: f64, d: f64) -> Result<CfCltBounds> {
    if !(l3 > 0.0) {
        return Err(Error::domain("clt_cf_bounds needs a positive Lyapunov fraction"));
    }
    if !(d > 0.0) {
        return Err(Error::domain("clt_cf_bounds needs d > 0"));
    }
    let modulus_bound = (-0.5 * t * t + l3 * t.abs().powi(3) / 3.0).exp();
    let diff_bound = if t.abs() <= d / l3 {
        Some(2.0 * l3 * t.abs().powi(3) * (-0.5 * t * t * (1.0 - 2.0 * d / 3.0)).exp())
    } else {
        None
    };
    Ok(CfCltBounds { modulus_bound, diff_bound })
}

/// Variant of [`clt_cf_bounds`] that errors outside the valid range of
/// the difference bound.
pub fn clt_cf_diff_bound(l3: f64, t: f64, d: f64) -> Result<f64> {
    clt_cf_bounds(l3, t, d)?.diff_bound.ok_or_else(|| {
        Error::domain(format!("difference bound needs |t| <= d/l3 = {}", d / l3))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_values() {
        let n = CharFn::normal(0.0, 1.0).unwrap();
        assert_eq!(n.eval(0.0), Complex64::new(1.0, 0.0));
        let l = CharFn::laplace(1.0).unwrap();
        let v = l.eval(1.0);
        assert!((v.re - 0.5).abs() < 1e-15 && v.im == 0.0);
        let c = CharFn::cauchy().unwrap();
        assert!((c.eval(1.0).re - (-1.0_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn uniform_symmetrization_identity() {
        // |cf of U(0,1)|^2 equals the tent-density identity sin^2(t/2)/(t/2)^2
        let u = CharFn::uniform(0.0, 1.0).unwrap();
        for i in 1..=60 {
            let t = i as f64 * 0.25;
            let lhs = u.eval(t).norm_sqr();
            let rhs = (t / 2.0).sin().powi(2) / (t / 2.0).powi(2);
            assert!((lhs - rhs).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn conjugate_symmetry_on_grid() {
        let cfs = vec![
            CharFn::normal(0.3, 2.0).unwrap(),
            CharFn::gamma(2.0, 1.5).unwrap(),
            CharFn::poisson(1.0).unwrap(),
            CharFn::uniform(-1.0, 2.0).unwrap(),
            CharFn::from_lattice(&LatticeDist::bernoulli(0.3).unwrap()).unwrap(),
        ];
        for cf in &cfs {
            for i in 0..=40 {
                let t = -5.0 + 0.25 * i as f64;
                let a = cf.eval(-t);
                let b = cf.eval(t).conj();
                assert!((a - b).norm() < 1e-12, "{} at t={t}", cf.meta.description);
            }
        }
    }

    #[test]
    fn taylor_plain_antipodal() {
        // |e^{i pi} - 1| = 2 <= pi at n = 0, delta = 1
        let r = taylor_remainder(PI, 0, TaylorVariant::Plain { delta: 1.0 }).unwrap();
        assert!((r.remainder_abs - 2.0).abs() < 1e-12);
        assert!((r.bound - PI).abs() < 1e-12);
        assert!(r.remainder_abs <= r.bound);
        assert!(taylor_remainder(1.0, 0, TaylorVariant::Plain { delta: 1.5 }).is_err());
    }

    #[test]
    fn taylor_first_remainder_is_two_sin_half() {
        for i in 0..=80 {
            let x = -10.0 + 0.25 * i as f64;
            let r = taylor_remainder(x, 0, TaylorVariant::Plain { delta: 1.0 }).unwrap();
            assert!(
                (r.remainder_abs - 2.0 * (x / 2.0).sin().abs()).abs() < 1e-12,
                "x={x}"
            );
        }
    }

    #[test]
    fn taylor_prawitz_n1() {
        // |e^{ix} - 1 - ix/4| <= (3/4)|x|
        for i in 0..=160 {
            let x = -20.0 + 0.25 * i as f64;
            let r = taylor_remainder(x, 1, TaylorVariant::Prawitz).unwrap();
            assert!(r.remainder_abs <= r.bound + 1e-12, "x={x}");
            assert!((r.bound - 0.75 * x.abs()).abs() < 1e-12);
        }
        assert!(taylor_remainder(1.0, 0, TaylorVariant::Prawitz).is_err());
    }

    #[test]
    fn invert_normal_and_laplace() {
        let n = CharFn::normal(0.0, 1.0).unwrap();
        let v = invert_cdf(&n, 1.0, 40.0, 1e-8).unwrap();
        assert!((v - crate::special::normal_cdf(1.0)).abs() < 1e-6, "{v}");
        let l = CharFn::laplace(1.0).unwrap();
        let v = invert_cdf(&l, 0.0, 200.0, 1e-8).unwrap();
        assert!((v - 0.5).abs() < 1e-6, "{v}");
    }

    #[test]
    fn invert_lattice_atom_average() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        let cf = CharFn::from_lattice(&s).unwrap();
        let v = invert_cdf(&cf, 1.0, 4000.0, 1e-8).unwrap();
        assert!((v - 0.75).abs() < 1e-5, "{v}");
    }

    #[test]
    fn feller_zero_integral_arithmetic() {
        let f = CharFn::normal(0.0, 1.0).unwrap();
        let g = CharFn::normal(0.0, 1.0).unwrap();
        let a_sup = 1.0 / crate::special::SQRT_2PI;
        let v = feller_bound(&f, &g, a_sup, 10.0, 2.0).unwrap();
        assert!((v - 24.0 / (PI * crate::special::SQRT_2PI * 10.0)).abs() < 1e-9);
        assert!(feller_bound(&f, &g, a_sup, 10.0, 1.0).is_err());
        // the pole at b -> 1+: bound blows up
        let near = feller_bound(&f, &g, a_sup, 10.0, 1.0 + 1e-9).unwrap();
        assert!(near > 1e6);
    }

    #[test]
    fn kernel_values_and_bounds() {
        let k = prawitz_kernel(0.5).unwrap();
        assert!((k.re - 0.25).abs() < 1e-15);
        for i in 1..=999 {
            let t = i as f64 / 1000.0;
            let k = prawitz_kernel(t).unwrap();
            assert!(k.norm() * 2.0 * PI * t <= 1.0253 + 1e-12, "t={t}");
            let km = prawitz_kernel_minus_pole(t).unwrap();
            assert!(
                km.norm() <= 0.5 * (1.0 - t + PI * PI * t * t / 18.0) + 1e-12,
                "t={t}"
            );
        }
        assert!(prawitz_kernel(0.0).is_err());
        assert!(prawitz_kernel(1.0).is_err());
    }

    #[test]
    fn prawitz_bound_for_normal_is_small() {
        let f = CharFn::normal(0.0, 1.0).unwrap();
        let (v, t_cap, _) = prawitz_rho_bound_optimized(&f).unwrap();
        assert!(v >= 0.0);
        assert!(v <= 0.01, "optimized bound {v} at T={t_cap}");
        // t0 = 1 kills the second integral; still a valid bound
        let v1 = prawitz_rho_bound(&f, 20.0, 1.0).unwrap();
        assert!(v1 >= 0.0);
    }

    #[test]
    fn cos_power_bound_envelope() {
        // |cos(t/2)|^4 <= exp(-t^2/2 + |t|^3/6) for the 4-fold
        // symmetric two-point sum (l3 = 1/2)
        for i in 0..=80 {
            let t = -2.0 + 0.05 * i as f64;
            let lhs = (t / 2.0).cos().abs().powi(4);
            let b = clt_cf_bounds(0.5, t, 0.7).unwrap();
            assert!(lhs <= b.modulus_bound + 1e-12, "t={t}");
        }
    }

    #[test]
    fn cf_diff_bound_on_grid() {
        let s = LatticeDist::symmetric_pm1().unwrap();
        let cf = CharFn::standardized_sum(&s, 4).unwrap();
        let l3 = 0.5; // 1/sqrt(4)
        let d = 0.7;
        let lim = d / l3;
        for i in 0..=100 {
            let t = -lim + 2.0 * lim * i as f64 / 100.0;
            let lhs = (cf.eval(t) - Complex64::new((-0.5 * t * t).exp(), 0.0)).norm();
            let rhs = clt_cf_diff_bound(l3, t, d).unwrap();
            assert!(lhs <= rhs + 1e-12, "t={t}: {lhs} vs {rhs}");
        }
        assert!(clt_cf_diff_bound(0.5, 2.0 * lim, d).is_err());
    }

    #[test]
    fn modulus_at_zero() {
        let b = clt_cf_bounds(1.0, 0.0, 0.7).unwrap();
        assert_eq!(b.modulus_bound, 1.0);
        assert_eq!(b.diff_bound, Some(0.0));
    }
}
