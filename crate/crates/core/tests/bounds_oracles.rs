//! Oracle checks of the moment bounds: dominance over the exact
//! lattice distances, extremality of the odd-moment factor, and the
//! random-law moment inequalities behind the truncation method.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use limitbounds::bounds_clt::{
    self, extremal_two_point, psi_two_point, LowerBoundKind, MomentProfile, UniformVariant,
};
use limitbounds::bounds_rs::{self, IndexMoments, PBParams, SummandMoments};
use limitbounds::lattice::{KolmogorovReference, LatticeDist, MomentMode};

fn exact_distance(law: &LatticeDist, n: u32) -> f64 {
    law.self_convolve(n)
        .unwrap()
        .standardized()
        .unwrap()
        .kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
        .unwrap()
}

#[test]
fn classical_bound_dominates_exact_small_suite() {
    let laws = [
        LatticeDist::symmetric_pm1().unwrap(),
        LatticeDist::bernoulli(0.1).unwrap().centered().unwrap(),
        LatticeDist::bernoulli(0.3).unwrap().centered().unwrap(),
        LatticeDist::two_point_standardized(0.2).unwrap(),
    ];
    for law in &laws {
        for n in 1..=30u32 {
            let exact = exact_distance(law, n);
            let p = MomentProfile::from_lattice_iid(law, 1.0, n).unwrap();
            for variant in [UniformVariant::Classical, UniformVariant::Best] {
                let b = bounds_clt::berry_esseen_uniform(&p, variant).unwrap();
                assert!(b.value + 1e-9 >= exact, "n={n}: {} vs {exact}", b.value);
            }
        }
    }
}

#[test]
fn fraction_ordering_on_random_profiles() {
    // n^{-delta/2} <= T <= L for every profile
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..200 {
        let delta = rng.gen_range(0.05..=1.0);
        let n = rng.gen_range(1..=12usize);
        let summands: Vec<bounds_clt::SummandMoment> = (0..n)
            .map(|_| {
                let sigma2 = rng.gen_range(0.1..4.0);
                let extra = rng.gen_range(1.0..3.0);
                bounds_clt::SummandMoment {
                    sigma2,
                    beta: sigma2.powf(1.0 + delta / 2.0) * extra,
                }
            })
            .collect();
        let p = MomentProfile::general(delta, summands).unwrap();
        let fr = bounds_clt::fractions(&p);
        let floor = (n as f64).powf(-delta / 2.0);
        assert!(floor <= fr.t + 1e-12 && fr.t <= fr.l + 1e-12, "n={n}, delta={delta}");
    }
}

#[test]
fn hipp_mattner_matches_oracle_exactly() {
    for n in 1..=40u32 {
        let oracle = exact_distance(&LatticeDist::symmetric_pm1().unwrap(), n);
        let closed = bounds_clt::hipp_mattner_exact(n).unwrap();
        assert!((oracle - closed).abs() < 1e-10, "n={n}");
    }
}

#[test]
fn zeta1_oracle_matches_psi() {
    for p in [0.1, 0.2, 0.3, 0.5] {
        let d = LatticeDist::two_point_standardized(p).unwrap();
        let quadrature = d.zeta1_distance_to_normal().unwrap();
        let closed = psi_two_point(p).unwrap();
        assert!((quadrature - closed).abs() < 1e-7, "p={p}: {quadrature} vs {closed}");
    }
}

#[test]
fn centered_moment_inequality_random_laws() {
    // E|X - a|^(2+delta) <= beta_{2+delta} + 3.25 beta_2 |a|^delta
    //                    <= 4.25 beta_{2+delta}
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5);
        let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        let s: f64 = w.iter().sum();
        let last = w.len() - 1;
        w[last] += 1.0 - s;
        let off = rng.gen_range(-2.0..2.0);
        let step = rng.gen_range(0.2..2.0);
        let d = LatticeDist::new(off, step, w, 0.0).unwrap();
        let delta = rng.gen_range(0.05..=1.0);
        let a = d.mean();
        let central = d.moment(2.0 + delta, MomentMode::CentralAbsolute).unwrap();
        let beta = d.moment(2.0 + delta, MomentMode::Absolute).unwrap();
        let beta2 = d.moment(2.0, MomentMode::Absolute).unwrap();
        assert!(central <= beta + 3.25 * beta2 * a.abs().powf(delta) + 1e-12);
        // the 4.25 form needs beta2 = 1 scaling, i.e. the scale-free
        // statement
        let scale = beta2.sqrt();
        let central_s = central / scale.powf(2.0 + delta);
        let beta_s = beta / scale.powf(2.0 + delta);
        assert!(central_s <= 4.25 * beta_s + 1e-12);
    }
}

#[test]
fn extremality_of_odd_moment_factor() {
    // |E X^3| <= A(rho) E|X|^3 over random standardized three-point
    // laws; equality on the two-point law itself
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    let mut checked = 0;
    while checked < 10_000 {
        // random three-point law, standardized
        let xs = [
            rng.gen_range(-3.0..-0.1),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(0.1..3.0),
        ];
        let mut w = [rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0)];
        let tot: f64 = w.iter().sum();
        for x in &mut w {
            *x /= tot;
        }
        let mean: f64 = xs.iter().zip(&w).map(|(x, p)| x * p).sum();
        let var: f64 = xs.iter().zip(&w).map(|(x, p)| (x - mean) * (x - mean) * p).sum();
        if var < 1e-6 {
            continue;
        }
        let sd = var.sqrt();
        let z: Vec<f64> = xs.iter().map(|x| (x - mean) / sd).collect();
        let m3: f64 = z.iter().zip(&w).map(|(x, p)| x.powi(3) * p).sum();
        let b3: f64 = z.iter().zip(&w).map(|(x, p)| x.abs().powi(3) * p).sum();
        let a = extremal_two_point(b3.max(1.0)).unwrap().a;
        assert!(m3.abs() <= a * b3 + 1e-9, "|EX^3| = {} vs A(rho) E|X|^3 = {}", m3.abs(), a * b3);
        checked += 1;
    }
    // equality at sampled rho on the extremal two-point law
    for rho in [1.2, 2.0, 5.0] {
        let e = extremal_two_point(rho).unwrap();
        let d = LatticeDist::two_point_standardized(e.p).unwrap();
        let m3 = d.moment(3.0, MomentMode::Raw).unwrap();
        let b3 = d.moment(3.0, MomentMode::Absolute).unwrap();
        assert!((b3 - rho).abs() < 1e-9, "rho={rho}");
        assert!((m3.abs() - e.a * b3).abs() < 1e-6, "rho={rho}");
    }
}

#[test]
fn coupling_chain_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..20 {
        let n = rng.gen_range(1..=8);
        let ps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..0.6)).collect();
        let lambda: f64 = ps.iter().sum();
        let pb = LatticeDist::poisson_binomial(&ps).unwrap();
        let po = LatticeDist::poisson(lambda, 1e-14).unwrap();
        let ks = pb.kolmogorov_distance(KolmogorovReference::Lattice(&po)).unwrap();
        let tv = pb.tv_distance(&po).unwrap();
        let coupling = bounds_rs::poisson_coupling_tv(&ps).unwrap();
        assert!(ks <= tv + 1e-12 && tv <= coupling + 1e-9, "{ks} {tv} {coupling}");
    }
}

#[test]
fn index_dominance_for_shared_summand() {
    // tv between two compound laws sharing the summand is at most the
    // tv between the index laws
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let summand = LatticeDist::new(0.0, 1.0, vec![0.3, 0.5, 0.2], 0.0).unwrap();
    for _ in 0..10 {
        let make_idx = |rng: &mut ChaCha8Rng| {
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
        let n1 = make_idx(&mut rng);
        let n2 = make_idx(&mut rng);
        let c1 = LatticeDist::compound(&n1, &summand).unwrap();
        let c2 = LatticeDist::compound(&n2, &summand).unwrap();
        let tv_compound = c1.tv_distance(&c2).unwrap();
        let tv_index = n1.tv_distance(&n2).unwrap();
        assert!(tv_compound <= tv_index + 1e-12, "{tv_compound} vs {tv_index}");
    }
}

#[test]
fn pb_bound_converges_to_poisson_bound() {
    // equal p = lambda/n at fixed lambda: the PB bound approaches the
    // Poisson random-sum bound from above as n grows
    let lambda = 4.0;
    let m = SummandMoments::new(0.0, 1.0, 1.0, 1.0).unwrap();
    let target = bounds_rs::poisson_sum_bound(lambda, &m).unwrap().value;
    let mut prev_gap = f64::INFINITY;
    for n in [100usize, 1000, 10000] {
        let pb = PBParams::new(vec![lambda / n as f64; n]).unwrap();
        let v = bounds_rs::pb_sum_bound(&pb, &m).unwrap().value;
        let gap = (v - target).abs();
        assert!(gap < prev_gap, "n={n}");
        prev_gap = gap;
    }
    assert!(prev_gap < 5e-2 * target);
}

#[test]
fn pb_bound_dominates_exact_compound_distance() {
    // PB index (n = 6, p = 0.3 each), symmetric two-point summand
    let ps = vec![0.3; 6];
    let pb = PBParams::new(ps.clone()).unwrap();
    let m = SummandMoments::new(0.0, 1.0, 1.0, 1.0).unwrap();
    let bound = bounds_rs::pb_sum_bound(&pb, &m).unwrap().value;
    let idx = LatticeDist::poisson_binomial(&ps).unwrap();
    let summand = LatticeDist::symmetric_pm1().unwrap();
    let comp = LatticeDist::compound(&idx, &summand).unwrap().standardized().unwrap();
    let exact = comp
        .kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
        .unwrap();
    assert!(bound + 1e-9 >= exact, "{bound} vs {exact}");
}

#[test]
fn poisson_sum_bound_dominates_exact() {
    let lambda = 4.0;
    let m = SummandMoments::new(0.0, 1.0, 1.0, 1.0).unwrap();
    let bound = bounds_rs::poisson_sum_bound(lambda, &m).unwrap().value;
    let idx = LatticeDist::poisson(lambda, 1e-13).unwrap();
    let summand = LatticeDist::symmetric_pm1().unwrap();
    let comp = LatticeDist::compound(&idx, &summand).unwrap().standardized().unwrap();
    let exact = comp
        .kolmogorov_distance(KolmogorovReference::Normal { mean: 0.0, sd: 1.0 })
        .unwrap();
    assert!(bound + 1e-9 >= exact, "{bound} vs {exact}");
}

#[test]
fn sandwich_lower_below_m_table() {
    for delta in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0] {
        let lower = bounds_rs::poisson_sum_lower(delta, None).unwrap().value;
        let m = limitbounds::tables::m_poisson(delta).unwrap();
        assert!(lower < m, "delta={delta}: {lower} vs {m}");
    }
}

#[test]
fn bdnc_general_equals_poisson_sum_with_unit_index() {
    let m = SummandMoments::new(0.7, 3.0, 9.0, 1.0).unwrap();
    let y = IndexMoments { ey: 1.0, ey2: Some(1.0), ey_1_half_delta: Some(1.0), ey_2_delta: Some(1.0) };
    for lambda in [0.5, 3.0, 42.0] {
        let a = bounds_rs::bdnc_sum_bound(lambda, &y, &m, bounds_rs::BdncMode::General)
            .unwrap()
            .value;
        let b = bounds_rs::poisson_sum_bound(lambda, &m).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits(), "lambda={lambda}");
    }
}

#[test]
fn nonuniform_bound_dominates_pointwise() {
    // symmetric two-point sums at n = 9 and x in {0, 1, 2, 5}
    let law = LatticeDist::symmetric_pm1().unwrap();
    let n = 9u32;
    let sum = law.self_convolve(n).unwrap().standardized().unwrap();
    let p = MomentProfile::from_lattice_iid(&law, 1.0, n).unwrap();
    for x in [0.0, 1.0, 2.0, 5.0] {
        let mut below: f64 = 0.0;
        for (a, w) in sum.atoms() {
            if a < x - 1e-12 {
                below += w;
            }
        }
        let exact = (below - limitbounds::special::normal_cdf(x)).abs();
        let b = bounds_clt::nonuniform_bound(
            &p,
            x,
            bounds_clt::NonuniformVariant::NagaevBikelis { s_list: None },
        )
        .unwrap();
        assert!(b.value + 1e-9 >= exact, "x={x}: {} vs {exact}", b.value);
    }
}

#[test]
fn lower_bounds_stay_below_upper_constants() {
    let sqrt2pi_inv = bounds_clt::lower_bounds(LowerBoundKind::CltSqrt2pi).unwrap();
    for row_delta in [1.0, 0.5, 0.1] {
        let c0 = limitbounds::tables::be_classical(row_delta, limitbounds::tables::Regime::Iid)
            .unwrap();
        assert!(sqrt2pi_inv < c0 || row_delta < 1.0);
    }
    // psi-based minorant stays below the mean-metric constant
    for delta in [0.1, 0.3, 0.5, 1.0] {
        let coef = 2.0 / (1.0 + delta) * (std::f64::consts::PI / 2.0).powf((1.0 - delta) / 2.0);
        let lower = bounds_clt::zeta1_bounds(bounds_clt::Zeta1Variant::LowerPsi {
            delta,
            p: 0.5,
        })
        .unwrap()
        .value;
        assert!(lower < coef, "delta={delta}");
    }
}
