//! The verification checks behind `verify`: every acceptance criterion
//! expressed as a list of pass/fail records against the exact lattice
//! oracle, the published tables, or closed forms.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use limitbounds::bounds_clt::{
    self, extremal_two_point, psi_two_point, GClassFunction, MomentProfile, NonuniformVariant,
    OsipovConstant, UniformVariant,
};
use limitbounds::bounds_rs::{self, PBParams, SummandMoments};
use limitbounds::cf::{self, CharFn, TaylorVariant};
use limitbounds::lattice::{KolmogorovReference, LatticeDist, MomentMode};
use limitbounds::special::{self, normal_cdf, SQRT_2PI};
use limitbounds::tables::{self, Regime};

use crate::report::{Check, Provenance};

/// The twelve centered lattice laws used by the dominance suite.
pub fn dominance_laws() -> Vec<(String, LatticeDist)> {
    let mk = |name: &str, d: LatticeDist| (name.to_string(), d);
    vec![
        mk("symmetric_pm1", LatticeDist::symmetric_pm1().unwrap()),
        mk("two_point(0.1)", LatticeDist::two_point_standardized(0.1).unwrap()),
        mk("two_point(0.2)", LatticeDist::two_point_standardized(0.2).unwrap()),
        mk("two_point(0.3)", LatticeDist::two_point_standardized(0.3).unwrap()),
        mk("bernoulli(0.1)-c", LatticeDist::bernoulli(0.1).unwrap().centered().unwrap()),
        mk("bernoulli(0.3)-c", LatticeDist::bernoulli(0.3).unwrap().centered().unwrap()),
        mk("binomial(2,0.5)-c", LatticeDist::binomial(2, 0.5).unwrap().centered().unwrap()),
        mk("binomial(3,0.3)-c", LatticeDist::binomial(3, 0.3).unwrap().centered().unwrap()),
        mk("poisson(1)-c", LatticeDist::poisson(1.0, 1e-13).unwrap().centered().unwrap()),
        mk("poisson(3)-c", LatticeDist::poisson(3.0, 1e-13).unwrap().centered().unwrap()),
        mk("geometric(0.5)-c", LatticeDist::geometric(0.5, 1e-13).unwrap().centered().unwrap()),
        mk(
            "three_point{-2,0,2}",
            LatticeDist::new(-2.0, 2.0, vec![0.25, 0.5, 0.25], 0.0).unwrap(),
        ),
    ]
}

fn exact_uniform_distance(sum: &LatticeDist) -> f64 {
    sum.kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
        .unwrap()
}

/// Criterion 1: the exact oracle distance of standardized symmetric
/// two-point sums equals the closed form to 1e-10 for n <= 60 and
/// stays below 1/sqrt(2 pi n) for n <= 200.
pub fn exact_clt_distance() -> Vec<Check> {
    let law = LatticeDist::symmetric_pm1().unwrap();
    let mut worst_eq: f64 = 0.0;
    let mut worst_cap = f64::INFINITY;
    let mut sum = law.clone();
    for n in 1..=200u32 {
        if n > 1 {
            sum = sum.convolve(&law).unwrap();
        }
        let d = exact_uniform_distance(&sum.standardized().unwrap());
        if n <= 60 {
            let closed = bounds_clt::hipp_mattner_exact(n).unwrap();
            worst_eq = worst_eq.max((d - closed).abs());
        }
        let cap = 1.0 / (2.0 * std::f64::consts::PI * n as f64).sqrt();
        worst_cap = worst_cap.min(cap - d);
    }
    vec![
        Check::at_most("exact_clt: |oracle - closed form| over n = 1..60", worst_eq, 1e-10, Provenance::Paper),
        Check::at_least("exact_clt: 1/sqrt(2 pi n) - oracle over n = 1..200", worst_cap, 0.0, Provenance::Paper),
    ]
}

/// Criterion 2: every uniform and nonuniform bound dominates the exact
/// oracle distance on the 12-law suite for n = 1..30 with margin at
/// least -1e-9.
pub fn dominance_suite() -> Vec<Check> {
    let laws = dominance_laws();
    let mut worst_classical = f64::INFINITY;
    let mut worst_structured = f64::INFINITY;
    let mut worst_osipov = f64::INFINITY;
    let mut worst_kp = f64::INFINITY;
    let mut worst_nb = f64::INFINITY;
    let mut worst_feller = f64::INFINITY;
    let mut worst_prawitz = f64::INFINITY;
    let (osipov_c, _) = bounds_clt::osipov_constant(0.4690).unwrap();
    for (_name, law) in &laws {
        let mut sum = law.clone();
        for n in 1..=30u32 {
            if n > 1 {
                sum = sum.convolve(law).unwrap();
            }
            let std_sum = sum.standardized().unwrap();
            let exact = exact_uniform_distance(&std_sum);
            let profile = MomentProfile::from_lattice_iid(law, 1.0, n).unwrap();

            let b = bounds_clt::berry_esseen_uniform(&profile, UniformVariant::Classical)
                .unwrap()
                .value;
            worst_classical = worst_classical.min(b - exact);
            let b = bounds_clt::berry_esseen_uniform(&profile, UniformVariant::Best)
                .unwrap()
                .value;
            worst_structured = worst_structured.min(b - exact);

            let ds = vec![law.clone(); n as usize];
            let b = bounds_clt::osipov(&ds, 1.0, OsipovConstant::FromClassical(0.4690))
                .unwrap()
                .value;
            worst_osipov = worst_osipov.min(b - exact);

            let g = GClassFunction::new(|x: f64| (1.0 + x.abs()).ln(), 1e9).unwrap();
            let b = bounds_clt::katz_petrov(&ds, &g, osipov_c).unwrap().value;
            worst_kp = worst_kp.min(b - exact);

            for x in [0.0, 1.0, 2.0, 5.0] {
                let mut below = 0.0;
                for (a, w) in std_sum.atoms() {
                    if a < x - 1e-12 {
                        below += w;
                    }
                }
                let pointwise = (below - normal_cdf(x)).abs();
                let b = bounds_clt::nonuniform_bound(
                    &profile,
                    x,
                    NonuniformVariant::NagaevBikelis { s_list: None },
                )
                .unwrap()
                .value;
                worst_nb = worst_nb.min(b - pointwise);
            }

            let f = CharFn::standardized_sum(law, n).unwrap();
            let g = CharFn::normal(0.0, 1.0).unwrap();
            let b = cf::feller_bound(&f, &g, 1.0 / SQRT_2PI, 20.0, 2.0).unwrap();
            worst_feller = worst_feller.min(b - exact);

            let mut best = f64::INFINITY;
            for t_cap in [6.0, 10.0, 16.0] {
                best = best.min(cf::prawitz_rho_bound(&f, t_cap, 1.0).unwrap());
            }
            worst_prawitz = worst_prawitz.min(best - exact);
        }
    }
    let floor = -1e-9;
    vec![
        Check::at_least("dominance: classical uniform bound margin", worst_classical, floor, Provenance::Derived),
        Check::at_least("dominance: structured uniform bound margin", worst_structured, floor, Provenance::Derived),
        Check::at_least("dominance: truncated-moment bound margin", worst_osipov, floor, Provenance::Derived),
        Check::at_least("dominance: weighted-moment bound margin", worst_kp, floor, Provenance::Derived),
        Check::at_least("dominance: nonuniform bound margin at x in {0,1,2,5}", worst_nb, floor, Provenance::Derived),
        Check::at_least("dominance: smoothing-inequality bound margin", worst_feller, floor, Provenance::Derived),
        Check::at_least("dominance: kernel-smoothing bound margin", worst_prawitz, floor, Provenance::Derived),
    ]
}

/// Criterion 3: the characteristic-function constant and the
/// truncation-method constants reproduce their published values.
pub fn constant_reproduction() -> Vec<Check> {
    let mut checks = Vec::new();
    let c = bounds_clt::be_cf_constant(2.0, 0.75).unwrap();
    checks.push(Check::close("cf-method constant at (b,d) = (2, 3/4)", c, 8.577, 1e-3, Provenance::Paper));
    let (c, b, d) = bounds_clt::be_cf_constant_optimized();
    checks.push(Check::close("cf-method constant optimized", c, 8.23, 1e-2, Provenance::Paper));
    checks.push(Check::close("cf-method optimal b", b, 1.72, 0.05, Provenance::Paper));
    checks.push(Check::close("cf-method optimal d", d, 0.703, 0.05, Provenance::Paper));
    let (c, _) = bounds_clt::osipov_constant(0.5583).unwrap();
    checks.push(Check::close("truncation constant at C0 = 0.5583", c, 6.11, 1e-2, Provenance::Paper));
    let (c, _) = bounds_clt::osipov_constant(9.0).unwrap();
    checks.push(Check::close("truncation constant at C0 = 9", c, 42.75, 1e-2, Provenance::Paper));
    checks
}

/// Criterion 4: the oracle mean-metric distance of the standardized
/// two-point law equals the closed form psi(p).
pub fn zeta1_closed_form() -> Vec<Check> {
    let mut checks = Vec::new();
    for p in [0.1, 0.2, 0.3, 0.5] {
        let d = LatticeDist::two_point_standardized(p).unwrap();
        let quadrature = d.zeta1_distance_to_normal().unwrap();
        let closed = psi_two_point(p).unwrap();
        checks.push(Check::close(
            format!("zeta1 oracle vs closed form at p = {p}"),
            quadrature,
            closed,
            1e-7,
            Provenance::Derived,
        ));
    }
    checks.push(Check::close(
        "psi(1/2) equals the two-point mean-metric constant",
        psi_two_point(0.5).unwrap(),
        0.535377,
        1e-6,
        Provenance::Paper,
    ));
    checks
}

/// Criterion 5: recomputation of the printed lower-bound tables.
pub fn lower_bound_tables() -> Vec<Check> {
    let mut checks = Vec::new();
    // nonuniform-minorant table at the printed near-extremal p
    for row in &tables::tables().nonuniform_lower.rows {
        let v = if row.p == 0.0 {
            1.0 // limit value as p -> 0+
        } else {
            bounds_clt::lower_bounds(bounds_clt::LowerBoundKind::NonuniformMinorant {
                delta: row.delta,
                p: row.p,
            })
            .unwrap()
        };
        checks.push(Check::close(
            format!("nonuniform minorant at delta = {}, p = {}", row.delta, row.p),
            v,
            row.value,
            5e-4,
            Provenance::Paper,
        ));
    }
    // the gamma-table for the Poisson random-sum constant
    for row in &tables::tables().poisson_lower_gamma.rows {
        if row.delta == 0.0 {
            let v = bounds_rs::poisson_sum_lower(0.001, None).unwrap().value;
            checks.push(Check::close(
                "poisson-sum minorant limit as delta -> 0+",
                v,
                0.5,
                6e-3,
                Provenance::Paper,
            ));
            continue;
        }
        let opt = bounds_rs::poisson_sum_lower(row.delta, None).unwrap();
        if (row.delta - 1.0).abs() < 1e-12 {
            // the printed 0.2383 disagrees with both the in-text value
            // and direct evaluation; the recomputation must match the
            // in-text 0.2344 and flag the printed entry
            checks.push(Check::close(
                "poisson-sum minorant at delta = 1 (in-text value)",
                opt.value,
                0.2344,
                5e-4,
                Provenance::Paper,
            ));
            checks.push(Check::close(
                "poisson-sum minorant optimizer gamma* at delta = 1",
                opt.gamma_star,
                row.gamma,
                5e-3,
                Provenance::Paper,
            ));
            checks.push(Check::boolean(
                "poisson-sum minorant delta = 1: printed 0.2383 flagged as discrepant",
                (opt.value - row.value).abs() > 5e-4,
                Provenance::Derived,
            ));
        } else if (row.delta - 0.9).abs() < 1e-12 {
            // the printed 0.2534 belongs to the delta = 0.7 column;
            // evaluation at the printed gamma reproduces the true
            // delta = 0.9 supremum instead
            let at_printed_gamma =
                bounds_rs::poisson_sum_lower(row.delta, Some(row.gamma)).unwrap().value;
            checks.push(Check::close(
                "poisson-sum minorant at delta = 0.9, printed gamma",
                at_printed_gamma,
                opt.value,
                5e-4,
                Provenance::Derived,
            ));
            checks.push(Check::boolean(
                "poisson-sum minorant delta = 0.9: printed 0.2534 flagged as discrepant",
                (opt.value - row.value).abs() > 5e-4,
                Provenance::Derived,
            ));
            let d07 = bounds_rs::poisson_sum_lower(0.7, None).unwrap().value;
            checks.push(Check::close(
                "printed 0.2534 matches the delta = 0.7 supremum",
                d07,
                row.value,
                5e-4,
                Provenance::Derived,
            ));
        } else {
            checks.push(Check::close(
                format!("poisson-sum minorant at delta = {}", row.delta),
                opt.value,
                row.value,
                5e-4,
                Provenance::Paper,
            ));
            checks.push(Check::close(
                format!("poisson-sum minorant gamma* at delta = {}", row.delta),
                opt.gamma_star,
                row.gamma,
                5e-3,
                Provenance::Paper,
            ));
        }
    }
    checks
}

/// Criterion 6: the coupling chain Kolmogorov <= TV <= sum p^2 on
/// random Poisson-binomial pairs, and index dominance for compound
/// laws sharing a summand.
pub fn coupling_chain(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_ks_tv = f64::INFINITY;
    let mut worst_tv_cap = f64::INFINITY;
    for _ in 0..20 {
        let n = rng.gen_range(1..=8);
        let ps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..0.6)).collect();
        let lambda: f64 = ps.iter().sum();
        let pb = LatticeDist::poisson_binomial(&ps).unwrap();
        let po = LatticeDist::poisson(lambda, 1e-14).unwrap();
        let ks = pb.kolmogorov_distance(KolmogorovReference::Lattice(&po)).unwrap();
        let tv = pb.tv_distance(&po).unwrap();
        let cap = bounds_rs::poisson_coupling_tv(&ps).unwrap();
        worst_ks_tv = worst_ks_tv.min(tv - ks);
        worst_tv_cap = worst_tv_cap.min(cap - tv);
    }
    let mut worst_index = f64::INFINITY;
    let summand = LatticeDist::new(0.0, 1.0, vec![0.3, 0.5, 0.2], 0.0).unwrap();
    for _ in 0..10 {
        let mut make_idx = || {
            let n = rng.gen_range(2..=5);
            let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            let tot: f64 = w.iter().sum();
            for x in &mut w {
                *x /= tot;
            }
            let s: f64 = w.iter().sum();
            let last = w.len() - 1;
            w[last] += 1.0 - s;
            LatticeDist::new(0.0, 1.0, w, 0.0).unwrap()
        };
        let n1 = make_idx();
        let n2 = make_idx();
        let c1 = LatticeDist::compound(&n1, &summand).unwrap();
        let c2 = LatticeDist::compound(&n2, &summand).unwrap();
        let tv_c = c1.tv_distance(&c2).unwrap();
        let tv_i = n1.tv_distance(&n2).unwrap();
        worst_index = worst_index.min(tv_i - tv_c);
    }
    vec![
        Check::at_least("coupling: TV - Kolmogorov on 20 random pairs", worst_ks_tv, -1e-12, Provenance::Derived),
        Check::at_least("coupling: sum p^2 - TV on 20 random pairs", worst_tv_cap, -1e-9, Provenance::Paper),
        Check::at_least("coupling: index TV - compound TV on 10 random pairs", worst_index, -1e-12, Provenance::Paper),
    ]
}

/// Criterion 7: the compound-Poisson decomposition of the negative
/// binomial law and its recomposition.
pub fn bdnc_round_trip() -> Vec<Check> {
    let mut checks = Vec::new();
    for (r, p) in [(1.0, 0.5), (2.0, 0.3), (0.5, 0.7)] {
        let nb = LatticeDist::negative_binomial(r, p, 1e-13).unwrap();
        let dec = nb.bdnc_decompose().unwrap();
        checks.push(Check::close(
            format!("decomposition rate at (r,p) = ({r},{p})"),
            dec.lambda,
            r * (1.0f64 / p).ln(),
            1e-10,
            Provenance::Paper,
        ));
        let y = dec.y_dist.expect("negative binomial is infinitely divisible on the integers");
        let norm = 1.0 / (1.0f64 / p).ln();
        let mut worst: f64 = 0.0;
        for (i, (_, w)) in y.atoms().enumerate().take(40) {
            let k = i as f64 + 1.0;
            worst = worst.max((w - norm * (1.0 - p).powf(k) / k).abs());
        }
        checks.push(Check::at_most(
            format!("log-series weights at (r,p) = ({r},{p})"),
            worst,
            1e-10,
            Provenance::Paper,
        ));
        let idx = LatticeDist::poisson(dec.lambda, 1e-13).unwrap();
        let rebuilt = LatticeDist::compound(&idx, &y).unwrap();
        checks.push(Check::at_most(
            format!("recomposition TV error at (r,p) = ({r},{p})"),
            rebuilt.tv_distance(&nb).unwrap(),
            1e-9,
            Provenance::Derived,
        ));
    }
    let dec = LatticeDist::binomial(2, 0.5).unwrap().bdnc_decompose().unwrap();
    checks.push(Check::boolean(
        "binomial(2, 0.5) flagged as not infinitely divisible",
        !dec.is_bdnc,
        Provenance::Derived,
    ));
    checks
}

/// Criterion 8: the aggregate-claims worked example.
pub fn insurance_example() -> Vec<Check> {
    let est = bounds_rs::insurance_tail_estimate(
        365.0,
        2.0,
        1.0,
        12.0,
        |k| 0.5f64.powi(k as i32),
        1600.0,
    )
    .unwrap();
    vec![
        Check::close("insurance estimate", est.estimate, 0.0753, 5e-4, Provenance::Paper),
        Check::close("insurance error bound", est.error_bound, 0.0373, 5e-4, Provenance::Paper),
        Check::at_most("insurance ceiling", est.ceiling, 0.1128 + 5e-4, Provenance::Paper),
    ]
}

/// Criterion 9: the elementary inequality grids with zero violations
/// at tolerance 1e-12.
pub fn lemma_grids(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let m = limitbounds::tol::BOUND_CHECK_GRID - 1;
    let grid: Vec<f64> = (0..=m).map(|i| -20.0 + 40.0 * i as f64 / m as f64).collect();
    // Taylor remainder bound over n and delta
    let mut worst: f64 = f64::NEG_INFINITY;
    for &delta in &[0.25, 0.5, 0.75, 1.0] {
        for n in 0..=5u32 {
            for &x in &grid {
                let r = cf::taylor_remainder(x, n, TaylorVariant::Plain { delta }).unwrap();
                worst = worst.max(r.remainder_abs - r.bound);
            }
        }
    }
    checks.push(Check::at_most("taylor remainder bound violations", worst, 1e-12, Provenance::Paper));
    // sharpened remainder with the kept fraction
    let mut worst: f64 = f64::NEG_INFINITY;
    for n in 1..=5u32 {
        for &x in &grid {
            let r = cf::taylor_remainder(x, n, TaylorVariant::Prawitz).unwrap();
            worst = worst.max(r.remainder_abs - r.bound);
        }
    }
    checks.push(Check::at_most("sharpened remainder bound violations", worst, 1e-12, Provenance::Paper));
    // cosine upper bound
    let mut worst: f64 = f64::NEG_INFINITY;
    for &x in &grid {
        worst = worst.max(x.cos() - (1.0 - 0.5 * x * x + x.abs().powi(3) / 6.0));
    }
    checks.push(Check::at_most("cosine cubic bound violations", worst, 1e-12, Provenance::Paper));
    // centered-moment inequality on random laws
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let tot: f64 = w.iter().sum();
        for x in &mut w {
            *x /= tot;
        }
        let s: f64 = w.iter().sum();
        let last = w.len() - 1;
        w[last] += 1.0 - s;
        let d = LatticeDist::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..2.0), w, 0.0)
            .unwrap();
        let delta = rng.gen_range(0.05..=1.0);
        let a = d.mean();
        let central = d.moment(2.0 + delta, MomentMode::CentralAbsolute).unwrap();
        let beta = d.moment(2.0 + delta, MomentMode::Absolute).unwrap();
        let beta2 = d.moment(2.0, MomentMode::Absolute).unwrap();
        worst = worst.max(central - (beta + 3.25 * beta2 * a.abs().powf(delta)));
        let scale = beta2.sqrt();
        worst = worst
            .max(central / scale.powf(2.0 + delta) - 4.25 * beta / scale.powf(2.0 + delta));
    }
    checks.push(Check::at_most("centered-moment inequality violations", worst, 1e-12, Provenance::Paper));
    // gamma-ratio bracket on a 50 x 11 grid
    let mut worst: f64 = f64::NEG_INFINITY;
    for i in 0..50 {
        let x = 0.05 * (1.06f64).powi(i) * 10.0; // log-spaced in (0.5, ~9.2)
        for j in 0..=10 {
            let s = j as f64 / 10.0;
            let (lo, hi) = special::wendel_bounds(x, s).unwrap();
            let ratio = special::gamma_ratio(x, s).unwrap() / x.powf(s);
            worst = worst.max(lo - ratio).max(ratio - hi);
        }
    }
    checks.push(Check::at_most("gamma-ratio bracket violations", worst, 1e-12, Provenance::Paper));
    // kernel modulus bounds
    let mut worst: f64 = f64::NEG_INFINITY;
    for i in 1..=999 {
        for sign in [-1.0, 1.0] {
            let t = sign * i as f64 / 1000.0;
            let k = cf::prawitz_kernel(t).unwrap();
            worst = worst.max(k.norm() * 2.0 * std::f64::consts::PI * t.abs() - 1.0253);
            let km = cf::prawitz_kernel_minus_pole(t).unwrap();
            worst = worst
                .max(km.norm() - 0.5 * (1.0 - t.abs() + std::f64::consts::PI.powi(2) * t * t / 18.0));
        }
    }
    checks.push(Check::at_most("kernel modulus bound violations", worst, 1e-12, Provenance::Paper));
    checks
}

/// Criterion 10: extremality of the odd-moment factor over random
/// standardized discrete laws and equality on the two-point law.
pub fn extremal_odd_moment(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut tried = 0;
    while tried < 10_000 {
        let k = rng.gen_range(2..=4);
        let xs: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let mut w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
        let tot: f64 = w.iter().sum();
        for x in &mut w {
            *x /= tot;
        }
        let mean: f64 = xs.iter().zip(&w).map(|(x, p)| x * p).sum();
        let var: f64 = xs.iter().zip(&w).map(|(x, p)| (x - mean) * (x - mean) * p).sum();
        if var < 1e-4 {
            continue;
        }
        let sd = var.sqrt();
        let z: Vec<f64> = xs.iter().map(|x| (x - mean) / sd).collect();
        let m3: f64 = z.iter().zip(&w).map(|(x, p)| x.powi(3) * p).sum();
        let b3: f64 = z.iter().zip(&w).map(|(x, p)| x.abs().powi(3) * p).sum();
        let a = extremal_two_point(b3.max(1.0)).unwrap().a;
        worst = worst.max(m3.abs() - a * b3);
        tried += 1;
    }
    let mut checks = vec![Check::at_most(
        "odd-moment extremality violations over 10^4 random laws",
        worst,
        1e-9,
        Provenance::Derived,
    )];
    for rho in [1.2, 2.0, 5.0] {
        let e = extremal_two_point(rho).unwrap();
        let d = LatticeDist::two_point_standardized(e.p).unwrap();
        let m3 = d.moment(3.0, MomentMode::Raw).unwrap();
        let b3 = d.moment(3.0, MomentMode::Absolute).unwrap();
        checks.push(Check::close(
            format!("two-point equality at rho = {rho}"),
            m3.abs(),
            e.a * b3,
            1e-6,
            Provenance::Paper,
        ));
    }
    checks
}

/// Extra invariants tying the published tables together.
pub fn table_consistency() -> Vec<Check> {
    let mut checks = Vec::new();
    // min over s of (1+s) C_s reproduces the classical column within
    // the published rounding
    for delta in [0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1] {
        for regime in [Regime::Iid, Regime::General] {
            let c0 = tables::be_classical(delta, regime).unwrap();
            let min: f64 = tables::be_structured_entries(delta, regime)
                .unwrap()
                .iter()
                .filter(|(s, _)| *s > 0.0)
                .map(|(s, c)| (1.0 + s) * c)
                .fold(f64::INFINITY, f64::min);
            checks.push(Check::close(
                format!("(1+s)C_s minimum vs classical constant, delta = {delta}, {regime:?}"),
                min,
                c0,
                6e-4,
                Provenance::Paper,
            ));
        }
    }
    // mean-metric constant formula reproduces the printed upper row
    for row in &tables::tables().zeta1_mean.rows {
        let coef = 2.0 / (1.0 + row.delta)
            * (std::f64::consts::PI / 2.0).powf((1.0 - row.delta) / 2.0);
        // printed values are rounded up at four decimals
        checks.push(Check::close(
            format!("mean-metric constant formula at delta = {}", row.delta),
            coef,
            row.upper,
            1.01e-4,
            Provenance::Paper,
        ));
        // the lower row comes from the psi minorant at the printed p
        if row.delta > 0.0 {
            let v = bounds_clt::zeta1_bounds(bounds_clt::Zeta1Variant::LowerPsi {
                delta: row.delta,
                p: row.p,
            })
            .unwrap()
            .value;
            checks.push(Check::close(
                format!("mean-metric minorant at delta = {}, p = {}", row.delta, row.p),
                v,
                row.lower,
                5e-4,
                Provenance::Paper,
            ));
        }
    }
    // classical floor sits under every classical constant at delta = 1
    let floor = bounds_clt::lower_bounds(bounds_clt::LowerBoundKind::CltSqrt2pi).unwrap();
    for regime in [Regime::Iid, Regime::General] {
        checks.push(Check::at_most(
            format!("sqrt(2 pi) floor below the classical constant ({regime:?})"),
            floor,
            tables::be_classical(1.0, regime).unwrap(),
            Provenance::Paper,
        ));
    }
    // the Poisson random-sum minorant stays below the M column
    for row in &tables::tables().m_poisson.rows {
        let lower = bounds_rs::poisson_sum_lower(row.delta, None).unwrap().value;
        checks.push(Check::at_most(
            format!("poisson-sum minorant below M at delta = {}", row.delta),
            lower,
            row.value,
            Provenance::Derived,
        ));
    }
    checks
}

/// Optimality of the unit truncation threshold: the truncated-moment
/// sum over an epsilon grid is minimized at epsilon = 1.
pub fn osipov_threshold_optimality() -> Vec<Check> {
    let law = LatticeDist::symmetric_pm1().unwrap();
    let ds = vec![law; 25];
    let at_one = {
        let fr = LatticeDist::lindeberg_osipov_fractions(&ds, 1.0).unwrap();
        fr.l_n_eps + fr.m_n_eps
    };
    let mut min_elsewhere = f64::INFINITY;
    for i in 1..=40 {
        let eps = 0.05 * i as f64;
        let fr = LatticeDist::lindeberg_osipov_fractions(&ds, eps).unwrap();
        min_elsewhere = min_elsewhere.min(fr.l_n_eps + fr.m_n_eps);
    }
    vec![Check::at_most(
        "epsilon = 1 minimizes the truncated-moment sum",
        at_one,
        min_elsewhere + 1e-15,
        Provenance::Paper,
    )]
}

/// Poisson-binomial random-sum bound dominance against the exact
/// compound oracle.
pub fn random_sum_dominance() -> Vec<Check> {
    let mut checks = Vec::new();
    // PB index, symmetric two-point summand
    let ps = vec![0.3; 6];
    let pb = PBParams::new(ps.clone()).unwrap();
    let m = SummandMoments::new(0.0, 1.0, 1.0, 1.0).unwrap();
    let bound = bounds_rs::pb_sum_bound(&pb, &m).unwrap().value;
    let idx = LatticeDist::poisson_binomial(&ps).unwrap();
    let summand = LatticeDist::symmetric_pm1().unwrap();
    let comp = LatticeDist::compound(&idx, &summand).unwrap().standardized().unwrap();
    checks.push(Check::at_least(
        "pb random-sum bound margin over exact oracle",
        bound - exact_uniform_distance(&comp),
        -1e-9,
        Provenance::Derived,
    ));
    // Poisson index
    let lambda = 4.0;
    let bound = bounds_rs::poisson_sum_bound(lambda, &m).unwrap().value;
    let idx = LatticeDist::poisson(lambda, 1e-13).unwrap();
    let comp = LatticeDist::compound(&idx, &summand).unwrap().standardized().unwrap();
    checks.push(Check::at_least(
        "poisson random-sum bound margin over exact oracle",
        bound - exact_uniform_distance(&comp),
        -1e-9,
        Provenance::Derived,
    ));
    checks
}
