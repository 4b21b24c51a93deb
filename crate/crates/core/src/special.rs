//! Scalar special functions: the standard normal law, log-gamma with
//! ratio helpers, Wendel's gamma-ratio bracket, the modified Bessel
//! function I0, and the closed-form extremal distances between a normal
//! CDF and its shifted/scaled versions.

use crate::error::{Error, Result};
use crate::tol;

pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

// Rational minimax coefficients for erf/erfc (Cody, Math. Comp. 1969;
// SPECFUN 2.5). Relative error below 1e-15 in double precision.
const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6e0,
    1.138_641_541_510_501_6e2,
    3.774_852_376_853_020_2e2,
    3.209_377_589_138_469_5e3,
    1.857_777_061_846_031_5e-1,
];
const ERF_B: [f64; 4] = [
    2.360_129_095_234_412_1e1,
    2.440_246_379_344_441_7e2,
    1.282_616_526_077_372_3e3,
    2.844_236_833_439_171e3,
];
const ERF_C: [f64; 9] = [
    5.641_884_969_886_700_9e-1,
    8.883_149_794_388_376e0,
    6.611_919_063_714_163e1,
    2.986_351_381_974_001_3e2,
    8.819_522_212_417_691e2,
    1.712_047_612_634_070_6e3,
    2.051_078_377_826_071_5e3,
    1.230_339_354_797_997_2e3,
    2.153_115_354_744_038_3e-8,
];
const ERF_D: [f64; 8] = [
    1.574_492_611_070_983_5e1,
    1.176_939_508_913_125e2,
    5.371_811_018_620_098_5e2,
    1.621_389_574_566_690_3e3,
    3.290_799_235_733_459_7e3,
    4.362_619_090_143_247e3,
    3.439_367_674_143_721_6e3,
    1.230_339_354_803_749_4e3,
];
const ERF_P: [f64; 6] = [
    3.053_266_349_612_323_4e-1,
    3.603_448_999_498_044_4e-1,
    1.257_817_261_112_292_4e-1,
    1.608_378_514_874_227_7e-2,
    6.587_491_615_298_378e-4,
    1.631_538_713_730_209_8e-2,
];
const ERF_Q: [f64; 5] = [
    2.568_520_192_289_822_4e0,
    1.872_952_849_923_460_4e0,
    5.279_051_029_514_284_1e-1,
    6.051_834_131_244_131_9e-2,
    2.335_204_976_268_691_8e-3,
];

const ERF_THRESH: f64 = 0.46875;
const INV_SQRT_PI: f64 = 5.641_895_835_477_562_9e-1;

/// erfc on [0.46875, inf); assumes y = |x| in range.
fn erfc_core(y: f64) -> f64 {
    if y <= 4.0 {
        let mut xnum = ERF_C[8] * y;
        let mut xden = y;
        for i in 0..7 {
            xnum = (xnum + ERF_C[i]) * y;
            xden = (xden + ERF_D[i]) * y;
        }
        let result = (xnum + ERF_C[7]) / (xden + ERF_D[7]);
        let ysq = (y * 16.0).trunc() / 16.0;
        let del = (y - ysq) * (y + ysq);
        (-ysq * ysq).exp() * (-del).exp() * result
    } else if y < 26.55 {
        let ysq = 1.0 / (y * y);
        let mut xnum = ERF_P[5] * ysq;
        let mut xden = ysq;
        for i in 0..4 {
            xnum = (xnum + ERF_P[i]) * ysq;
            xden = (xden + ERF_Q[i]) * ysq;
        }
        let mut result = ysq * (xnum + ERF_P[4]) / (xden + ERF_Q[4]);
        result = (INV_SQRT_PI - result) / y;
        let ysq = (y * 16.0).trunc() / 16.0;
        let del = (y - ysq) * (y + ysq);
        (-ysq * ysq).exp() * (-del).exp() * result
    } else {
        0.0
    }
}

/// Error function, relative error below 1e-14 on the whole axis.
pub fn erf(x: f64) -> f64 {
    let y = x.abs();
    if y <= ERF_THRESH {
        let ysq = if y > 1.11e-16 { y * y } else { 0.0 };
        let mut xnum = ERF_A[4] * ysq;
        let mut xden = ysq;
        for i in 0..3 {
            xnum = (xnum + ERF_A[i]) * ysq;
            xden = (xden + ERF_B[i]) * ysq;
        }
        x * (xnum + ERF_A[3]) / (xden + ERF_B[3])
    } else {
        let r = 1.0 - erfc_core(y);
        if x < 0.0 {
            -r
        } else {
            r
        }
    }
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    let y = x.abs();
    if y <= ERF_THRESH {
        1.0 - erf(x)
    } else if x < 0.0 {
        2.0 - erfc_core(y)
    } else {
        erfc_core(y)
    }
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal CDF. The erfc route keeps relative accuracy deep in
/// the lower tail, where lower-bound constructions evaluate it.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal upper tail `1 - Phi(x)`.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * erfc(x * std::f64::consts::FRAC_1_SQRT_2)
}

// Rational approximation for the normal quantile (Acklam 2003),
// accurate to ~1.2e-9 before refinement.
const NQ_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239e0,
];
const NQ_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const NQ_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838e0,
    -2.549_732_539_343_734e0,
    4.374_664_141_464_968e0,
    2.938_163_982_698_783e0,
];
const NQ_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996e0,
    3.754_408_661_907_416e0,
];

/// Inverse of the standard normal CDF on (0, 1).
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!(
            "normal quantile requires p in (0,1), got {p}"
        )));
    }
    let p_low = 0.02425;
    let mut x = if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((NQ_C[0] * q + NQ_C[1]) * q + NQ_C[2]) * q + NQ_C[3]) * q + NQ_C[4]) * q + NQ_C[5])
            / ((((NQ_D[0] * q + NQ_D[1]) * q + NQ_D[2]) * q + NQ_D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((NQ_A[0] * r + NQ_A[1]) * r + NQ_A[2]) * r + NQ_A[3]) * r + NQ_A[4]) * r + NQ_A[5]) * q
            / (((((NQ_B[0] * r + NQ_B[1]) * r + NQ_B[2]) * r + NQ_B[3]) * r + NQ_B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((NQ_C[0] * q + NQ_C[1]) * q + NQ_C[2]) * q + NQ_C[3]) * q + NQ_C[4]) * q + NQ_C[5])
            / ((((NQ_D[0] * q + NQ_D[1]) * q + NQ_D[2]) * q + NQ_D[3]) * q + 1.0)
    };
    // Two Newton steps; in the tails the residual is formed against the
    // matching tail probability to avoid cancellation.
    for _ in 0..2 {
        let (err, deriv) = if p < 0.5 {
            (normal_cdf(x) - p, normal_pdf(x))
        } else {
            (normal_sf(x) - (1.0 - p), -normal_pdf(x))
        };
        if deriv != 0.0 {
            let step = err / deriv;
            x -= step;
            if step.abs() < tol::NORMAL_QUANTILE_TOL * (1.0 + x.abs()) {
                break;
            }
        }
    }
    Ok(x)
}

// Lanczos approximation, g = 7, 9 terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    // Shift small arguments up for accuracy near the poles at 0.
    if x < 0.5 {
        Ok(ln_gamma_lanczos(x + 1.0) - x.ln())
    } else {
        Ok(ln_gamma_lanczos(x))
    }
}

/// Gamma function for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

/// Ratio Gamma(x+s)/Gamma(x) for x > 0, x + s > 0. Integer shifts use
/// the recurrence directly, so `gamma_ratio(x, 1.0) == x` exactly.
pub fn gamma_ratio(x: f64, s: f64) -> Result<f64> {
    if !(x > 0.0) || !(x + s > 0.0) {
        return Err(Error::domain(format!(
            "gamma_ratio requires x > 0 and x + s > 0, got x={x}, s={s}"
        )));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    if s.fract() == 0.0 && s.abs() <= 64.0 {
        let mut r = 1.0;
        if s > 0.0 {
            let mut t = x;
            for _ in 0..(s as i64) {
                r *= t;
                t += 1.0;
            }
        } else {
            let mut t = x;
            for _ in 0..((-s) as i64) {
                t -= 1.0;
                r /= t;
            }
        }
        return Ok(r);
    }
    Ok((ln_gamma(x + s)? - ln_gamma(x)?).exp())
}

/// Wendel's two-sided bracket for Gamma(x+s)/(x^s Gamma(x)) with x > 0
/// and s in [0, 1]: the ratio lies in [(x/(x+s))^(1-s), 1].
pub fn wendel_bounds(x: f64, s: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("wendel_bounds requires x > 0, got {x}")));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain(format!(
            "wendel_bounds requires s in [0,1], got {s}"
        )));
    }
    Ok(((x / (x + s)).powf(1.0 - s), 1.0))
}

/// Modified Bessel function of the first kind, order zero, by its power
/// series; terms are added until they fall below the relative cutoff.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::domain(format!("bessel_i0 requires x >= 0, got {x}")));
    }
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term < tol::I0_SERIES_CUTOFF * sum {
            return Ok(sum);
        }
        k += 1.0;
        if k > 1000.0 {
            return Err(Error::numeric("bessel_i0 series did not converge"));
        }
    }
}

/// Class of extremal normal-vs-normal comparisons.
#[derive(Debug, Clone, Copy)]
pub enum ExtremalKind {
    /// sup over x of |Phi(x+q) - Phi(x)|.
    Shift(f64),
    /// sup over x of |Phi(p x) - Phi(x)|, p > 0.
    Scale(f64),
}

#[derive(Debug, Clone)]
pub struct ExtremalDistance {
    /// Closed-form value of the supremum.
    pub exact: f64,
    /// Simple upper bounds on the supremum, loosest last.
    pub bounds: Vec<f64>,
}

/// Exact sup-distance between a standard normal CDF and its shifted or
/// scaled version, together with the elementary upper bounds.
pub fn normal_extremal_distance(kind: ExtremalKind) -> Result<ExtremalDistance> {
    match kind {
        ExtremalKind::Shift(q) => {
            let exact = 2.0 * normal_cdf(q.abs() / 2.0) - 1.0;
            Ok(ExtremalDistance {
                exact,
                bounds: vec![q.abs() / SQRT_2PI],
            })
        }
        ExtremalKind::Scale(p) => {
            if !(p > 0.0) {
                return Err(Error::domain(format!(
                    "scale comparison requires p > 0, got {p}"
                )));
            }
            if p == 1.0 {
                return Ok(ExtremalDistance {
                    exact: 0.0,
                    bounds: vec![0.0, 0.0],
                });
            }
            // stationary point of Phi(px) - Phi(x): p*phi(p*x) = phi(x)
            let x2 = (2.0 * p.ln() / (p * p - 1.0)).sqrt();
            let exact = (normal_cdf(p * x2) - normal_cdf(x2)).abs();
            let b1 = ((p - 1.0) * p.ln() / std::f64::consts::PI).sqrt();
            let b2 = (p.max(1.0 / p) - 1.0) / (2.0 * std::f64::consts::PI * std::f64::consts::E).sqrt();
            Ok(ExtremalDistance {
                exact,
                bounds: vec![b1, b2],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_cdf_basics() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-12);
        assert!((normal_cdf(-1.0) - 0.158_655_253_931_457_1).abs() < 1e-12);
        // deep tail keeps relative accuracy
        let t = normal_sf(8.0);
        assert!((t - 6.220_960_574_271_78e-16).abs() / t < 1e-10);
    }

    #[test]
    fn quantile_round_trip() {
        for &p in &[1e-12, 1e-6, 0.025, 0.3, 0.5, 0.841345, 0.975, 1.0 - 1e-10] {
            let x = normal_quantile(p).unwrap();
            assert!(
                (normal_cdf(x) - p).abs() < 1e-13 * (1.0 + 1.0 / p.min(1.0 - p)).min(1e3),
                "p={p}, x={x}"
            );
        }
        let x = normal_quantile(0.841345).unwrap();
        assert!((x - 1.0).abs() < 2e-6); // 0.841345 is Phi(1) rounded
        let x = normal_quantile(normal_cdf(1.0)).unwrap();
        assert!((x - 1.0).abs() < 1e-9);
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(1.5).unwrap() - 0.886_226_925_452_758).abs() < 1e-12);
        assert!((gamma(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        // recurrence is exact for unit shift
        assert_eq!(gamma_ratio(5.0, 1.0).unwrap(), 5.0);
        // Gamma(1/2)/Gamma(1) = sqrt(pi) < 1.7725
        let r = gamma_ratio(0.5, 0.5).unwrap();
        assert!((r * gamma(0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!(gamma(0.5).unwrap() < 1.7725);
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.0).is_err());
    }

    #[test]
    fn wendel_endpoints() {
        let (lo, hi) = wendel_bounds(1.0, 1.0).unwrap();
        assert_eq!((lo, hi), (1.0, 1.0));
        let ratio = gamma_ratio(1.0, 1.0).unwrap() / 1.0;
        assert_eq!(ratio, 1.0);
        let (lo, hi) = wendel_bounds(0.5, 0.5).unwrap();
        let ratio = gamma_ratio(0.5, 0.5).unwrap() / 0.5_f64.powf(0.5);
        assert!((lo - 0.707_106_781_186_547_6).abs() < 1e-12);
        assert!(lo <= ratio && ratio <= hi, "{lo} {ratio} {hi}");
        assert!((ratio - 0.797_884_560_802_865_4).abs() < 1e-10);
        assert!(wendel_bounds(1.0, 1.5).is_err());
    }

    #[test]
    fn bessel_i0_values() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        let v = bessel_i0(1.0).unwrap();
        assert!((v - 1.266_065_877_752_008_3).abs() < 1e-12);
        assert!(v > 81.0 / 64.0);
        assert!(bessel_i0(-0.1).is_err());
    }

    #[test]
    fn extremal_shift() {
        let d = normal_extremal_distance(ExtremalKind::Shift(0.0)).unwrap();
        assert_eq!(d.exact, 0.0);
        let d = normal_extremal_distance(ExtremalKind::Shift(2.0)).unwrap();
        assert!((d.exact - 0.682_689_492_137_085_9).abs() < 1e-12);
        assert!((d.bounds[0] - 0.797_884_560_802_865_4).abs() < 1e-12);
        assert!(d.exact <= d.bounds[0]);
    }

    #[test]
    fn extremal_scale() {
        let d = normal_extremal_distance(ExtremalKind::Scale(1.0)).unwrap();
        assert_eq!(d.exact, 0.0);
        let d = normal_extremal_distance(ExtremalKind::Scale(2.0)).unwrap();
        assert!((d.exact - 0.161_337_284_417_384_3).abs() < 1e-12, "{}", d.exact);
        assert!((d.bounds[0] - 0.469_718_639_349_825_6).abs() < 1e-12);
        assert!((d.bounds[1] - 0.241_970_724_519_143_3).abs() < 1e-12);
        assert!(d.exact <= d.bounds[0].min(d.bounds[1]));
        assert!(normal_extremal_distance(ExtremalKind::Scale(0.0)).is_err());
    }

    #[test]
    fn scale_symmetric_in_inversion() {
        for &p in &[0.25, 0.5, 2.0, 4.0, 7.5] {
            let a = normal_extremal_distance(ExtremalKind::Scale(p)).unwrap().exact;
            let b = normal_extremal_distance(ExtremalKind::Scale(1.0 / p))
                .unwrap()
                .exact;
            assert!((a - b).abs() < 1e-12, "p={p}: {a} vs {b}");
        }
    }

    #[test]
    fn scale_matches_grid_maximum() {
        for &p in &[0.5, 2.0, 3.0] {
            let exact = normal_extremal_distance(ExtremalKind::Scale(p)).unwrap().exact;
            let mut best: f64 = 0.0;
            for i in 0..=8000 {
                let x = -8.0 + 16.0 * i as f64 / 8000.0;
                best = best.max((normal_cdf(p * x) - normal_cdf(x)).abs());
            }
            assert!((best - exact).abs() < 1e-7, "p={p}: grid {best} vs {exact}");
        }
    }

    #[test]
    fn shift_matches_grid_maximum() {
        for &q in &[0.3, 1.0, 2.0, 4.0] {
            let exact = normal_extremal_distance(ExtremalKind::Shift(q)).unwrap().exact;
            let mut best: f64 = 0.0;
            for i in 0..=4000 {
                let x = -10.0 + 20.0 * i as f64 / 4000.0;
                best = best.max((normal_cdf(x + q) - normal_cdf(x)).abs());
            }
            assert!((best - exact).abs() < 1e-8, "q={q}: grid {best} vs {exact}");
        }
    }
}
