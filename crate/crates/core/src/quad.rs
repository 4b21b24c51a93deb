//! Adaptive quadrature built on the 15-point Gauss-Kronrod rule, plus a
//! panel-summation helper with convergence acceleration for oscillatory
//! tails.

use crate::error::{Error, Result};
use crate::tol;

// 15-point Kronrod nodes on [0, 1] side of the symmetric rule and the
// matching weights; the embedded 7-point Gauss rule uses every other
// node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod panel; returns (kronrod value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance
/// `abs_tol`, by recursive bisection of the worst panel.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        abs_tol: f64,
        global_tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let (v, e) = gk15(f, a, b);
        // the relative floor keeps large-magnitude integrands from
        // subdividing past the noise level of the rule itself
        if e <= abs_tol || e <= 5e-15 * v.abs() || b - a < 1e-15 * (1.0 + a.abs()) {
            return Ok(v);
        }
        if depth >= tol::QUAD_MAX_DEPTH {
            // the per-level budget can shrink past machine resolution;
            // a panel whose error estimate fits the whole budget is
            // still acceptable
            if e <= global_tol {
                return Ok(v);
            }
            return Err(Error::numeric(format!(
                "quadrature failed to converge on [{a}, {b}] (err {e:.3e})"
            )));
        }
        let m = 0.5 * (a + b);
        Ok(rec(f, a, m, abs_tol / 2.0, global_tol, depth + 1)?
            + rec(f, m, b, abs_tol / 2.0, global_tol, depth + 1)?)
    }
    rec(&f, a, b, abs_tol, abs_tol, 0)
}

/// Integration with the default tolerance.
pub fn integrate_default<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    integrate(f, a, b, tol::QUAD_ABS_TOL)
}

/// Improper oscillatory tail `int_{t1}^{inf} g(t) dt` summed in the
/// Cesaro sense: integrates `g(t) s((t - t1)/(tmax - t1))` over fixed
/// panels, where s is a seventh-order smoothstep window (value 1 and
/// three vanishing derivatives at t1, value 0 and three vanishing
/// derivatives at tmax). Repeated integration by parts then damps a
/// slowly decaying oscillation of frequency w by (w (tmax-t1))^{-4},
/// with no knowledge of the frequencies needed. Absolutely integrable
/// parts must already be negligible beyond t1.
pub fn riesz_tail<F: Fn(f64) -> f64>(g: F, t1: f64, tmax: f64, panel: f64) -> Result<f64> {
    if !(tmax > t1) || !(panel > 0.0) {
        return Err(Error::numeric("riesz_tail needs tmax > t1 and a positive panel"));
    }
    let w = tmax - t1;
    let window = |u: f64| 1.0 - u.powi(4) * (35.0 - 84.0 * u + 70.0 * u * u - 20.0 * u.powi(3));
    let weighted = |t: f64| g(t) * window((t - t1) / w);
    let n = ((w / panel).ceil() as usize).max(1);
    let mut acc = 0.0;
    let mut err = 0.0;
    for k in 0..n {
        let a = t1 + w * k as f64 / n as f64;
        let b = t1 + w * (k + 1) as f64 / n as f64;
        let (v, e) = gk15(&weighted, a, b);
        acc += v;
        err += e;
    }
    if err > 1e-6 {
        return Err(Error::numeric(format!(
            "oscillatory tail quadrature error too large ({err:.3e}); shrink the panel"
        )));
    }
    Ok(acc)
}
