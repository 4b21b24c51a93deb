//! Cross-checks of the characteristic-function toolkit against the
//! exact lattice oracle and against elementary inequalities.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use limitbounds::cf::{self, CharFn};
use limitbounds::lattice::{KolmogorovReference, LatticeDist};
use limitbounds::quad;
use limitbounds::special::{bessel_i0, normal_cdf, SQRT_2PI};

#[test]
fn inversion_matches_lattice_atom_averages() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let d = LatticeDist::new(-2.0, 1.0, vec![0.15, 0.2, 0.3, 0.2, 0.15], 0.0).unwrap();
    let f = CharFn::from_lattice(&d).unwrap();
    let atoms: Vec<(f64, f64)> = d.atoms().collect();
    let cdf_avg = |x: f64| -> f64 {
        let below: f64 = atoms.iter().filter(|(a, _)| *a < x).map(|(_, w)| w).sum();
        let at: f64 = atoms
            .iter()
            .filter(|(a, _)| (*a - x).abs() < 1e-12)
            .map(|(_, w)| w)
            .sum();
        below + 0.5 * at
    };
    let mut tested = 0;
    while tested < 20 {
        // half the points on atoms, half between them; off-atom points
        // keep a minimum separation so the slowest tail frequency stays
        // resolvable at this cutoff
        let x = if rng.gen_bool(0.5) {
            rng.gen_range(-2..=2) as f64
        } else {
            let cand = rng.gen_range(-3.0..3.0);
            let near = atoms.iter().any(|(a, _)| (a - cand).abs() < 0.05);
            if near {
                continue;
            }
            cand
        };
        let v = cf::invert_cdf(&f, x, 6000.0, 1e-8).unwrap();
        let expect = cdf_avg(x);
        assert!((v - expect).abs() < 1e-5, "x={x}: {v} vs {expect}");
        tested += 1;
    }
}

#[test]
fn inversion_of_gamma_against_series_cdf() {
    // Gamma(2, 1) CDF at x: 1 - e^{-x}(1 + x)
    let f = CharFn::gamma(2.0, 1.0).unwrap();
    for x in [0.5, 1.0, 2.5] {
        let v = cf::invert_cdf(&f, x, 400.0, 1e-8).unwrap();
        let expect = 1.0 - (-x).exp() * (1.0 + x);
        assert!((v - expect).abs() < 1e-5, "x={x}: {v} vs {expect}");
    }
}

#[test]
fn sharp_cosine_ratio_near_0_0991() {
    // sup over x of (cos x - 1 + x^2/2)/|x|^3 located by grid + refine
    let h = |x: f64| (x.cos() - 1.0 + 0.5 * x * x) / x.abs().powi(3);
    let mut best = (0.0, 0.0);
    for i in 1..=4000 {
        let x = i as f64 * 0.005;
        if h(x) > best.0 {
            best = (h(x), x);
        }
    }
    let (mut lo, mut hi) = (best.1 - 0.005, best.1 + 0.005);
    for _ in 0..60 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if h(m1) < h(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let sup = h(0.5 * (lo + hi));
    assert!((sup - 0.0991).abs() < 5e-4, "{sup}");
}

#[test]
fn cos_upper_bound_grid() {
    for i in 0..=2000 {
        let x = -20.0 + 0.02 * i as f64;
        assert!(x.cos() <= 1.0 - 0.5 * x * x + x.abs().powi(3) / 6.0 + 1e-12);
    }
}

#[test]
fn power_sum_inequality_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
        let r = rng.gen_range(1.0..3.0);
        let lhs: f64 = xs.iter().map(|x| x.powf(r)).sum();
        let rhs = xs.iter().sum::<f64>().powf(r);
        assert!(lhs <= rhs + 1e-9 * rhs.max(1.0));
    }
}

#[test]
fn bessel_series_matches_integral_definition() {
    // I0(x) = (1/pi) int_0^pi e^{x cos theta} d theta
    for i in 0..=20 {
        let x = 0.5 * i as f64;
        let series = bessel_i0(x).unwrap();
        let integral = quad::integrate(
            |th: f64| (x * th.cos()).exp(),
            0.0,
            std::f64::consts::PI,
            1e-12,
        )
        .unwrap()
            / std::f64::consts::PI;
        assert!((series - integral).abs() < 1e-10 * series, "x={x}");
    }
}

#[test]
fn feller_and_prawitz_dominate_small_suite() {
    // a fast spot check; the full 12-law suite runs in the acceptance
    // harness
    let laws = [
        LatticeDist::symmetric_pm1().unwrap(),
        LatticeDist::two_point_standardized(0.2).unwrap(),
    ];
    for law in &laws {
        for n in [1u32, 4, 16] {
            let sum = law.self_convolve(n).unwrap().standardized().unwrap();
            let exact = sum
                .kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
                .unwrap();
            let f = CharFn::standardized_sum(law, n).unwrap();
            let g = CharFn::normal(0.0, 1.0).unwrap();
            let feller = cf::feller_bound(&f, &g, 1.0 / SQRT_2PI, 20.0, 2.0).unwrap();
            assert!(feller + 1e-9 >= exact, "feller n={n}: {feller} vs {exact}");
            let prawitz = cf::prawitz_rho_bound(&f, 8.0, 1.0).unwrap();
            assert!(prawitz + 1e-9 >= exact, "prawitz n={n}: {prawitz} vs {exact}");
        }
    }
}

#[test]
fn feller_bound_dominates_exact_for_n16() {
    let law = LatticeDist::symmetric_pm1().unwrap();
    let sum = law.self_convolve(16).unwrap().standardized().unwrap();
    let exact = sum
        .kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
        .unwrap();
    let f = CharFn::standardized_sum(&law, 16).unwrap();
    let g = CharFn::normal(0.0, 1.0).unwrap();
    for t_up in [5.0, 10.0, 40.0] {
        let b = cf::feller_bound(&f, &g, 1.0 / SQRT_2PI, t_up, 2.0).unwrap();
        assert!(b >= exact, "T={t_up}");
    }
}

#[test]
fn prawitz_t0_one_kills_second_integral() {
    // with t0 = 1 the mid-range integral is empty, so lowering the
    // modulus of f cannot change the bound through it
    let f = CharFn::normal(0.0, 1.0).unwrap();
    let a = cf::prawitz_rho_bound(&f, 10.0, 1.0).unwrap();
    let b = cf::prawitz_rho_bound(&f, 10.0, 0.999999).unwrap();
    assert!((a - b).abs() < 1e-4);
}

#[test]
fn density_inversion_identities() {
    // test-only density inversion: p(x) = (1/2 pi) int e^{-itx} f(t) dt
    // for absolutely integrable characteristic functions
    let density_at = |f: &CharFn, x: f64, t_hi: f64| -> f64 {
        quad::integrate(
            |t| {
                let v = f.eval(t);
                (v * num_complex::Complex64::new(0.0, -t * x).exp()).re
            },
            -t_hi,
            t_hi,
            1e-10,
        )
        .unwrap()
            / (2.0 * std::f64::consts::PI)
    };
    // two-sided exponential density lambda/2 e^{-lambda |x|}
    let lap = CharFn::laplace(1.0).unwrap();
    for x in [0.0, 0.5, 1.5] {
        let p = density_at(&lap, x, 4000.0);
        let expect = 0.5 * (-x.abs()).exp();
        assert!((p - expect).abs() < 1e-4, "x={x}: {p} vs {expect}");
    }
    // tent characteristic function inverts to (1 - cos x)/(pi x^2)
    let tri = CharFn::triangular().unwrap();
    for x in [0.5, 2.0] {
        let p = density_at(&tri, x, 1.0);
        let expect = (1.0 - x.cos()) / (std::f64::consts::PI * x * x);
        assert!((p - expect).abs() < 1e-8, "x={x}: {p} vs {expect}");
    }
}

#[test]
fn normal_cdf_inversion_consistency() {
    let f = CharFn::normal(0.0, 1.0).unwrap();
    for x in [-2.0, -0.5, 0.0, 1.0, 2.5] {
        let v = cf::invert_cdf(&f, x, 40.0, 1e-8).unwrap();
        assert!((v - normal_cdf(x)).abs() < 1e-6, "x={x}");
    }
}
