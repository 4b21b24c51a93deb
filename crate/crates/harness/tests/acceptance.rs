//! Acceptance gate: every criterion runs at its stated tolerance and
//! prints one pass/fail line. The whole binary fails if any criterion
//! fails.

use std::time::Instant;

use limitbounds_cli::checks;
use limitbounds_cli::report::Check;

struct Criterion {
    name: &'static str,
    checks: Vec<Check>,
    elapsed_s: f64,
    budget_s: Option<f64>,
}

fn run(name: &'static str, budget_s: Option<f64>, f: impl FnOnce() -> Vec<Check>) -> Criterion {
    let start = Instant::now();
    let checks = f();
    Criterion { name, checks, elapsed_s: start.elapsed().as_secs_f64(), budget_s }
}

#[test]
fn acceptance() {
    let seed = 1u64;
    let criteria = vec![
        run("1. exact CLT distances (closed form to 1e-10, capped by 1/sqrt(2 pi n))", Some(5.0), checks::exact_clt_distance),
        run("2. dominance of every bound over the exact oracle (12 laws x n = 1..30)", Some(60.0), || {
            let mut c = checks::dominance_suite();
            c.extend(checks::random_sum_dominance());
            c
        }),
        run("3. constant reproduction (cf-method and truncation constants)", None, checks::constant_reproduction),
        run("4. zeta1 closed form vs oracle quadrature", None, checks::zeta1_closed_form),
        run("5. lower-bound table recomputation (with recorded discrepancies)", None, checks::lower_bound_tables),
        run("6. coupling chain and index dominance on random cases", None, || checks::coupling_chain(seed)),
        run("7. compound-Poisson round trip of the negative binomial", None, checks::bdnc_round_trip),
        run("8. aggregate-claims worked example", Some(1.0), checks::insurance_example),
        run("9. inequality grids with zero violations at 1e-12", None, || checks::lemma_grids(seed)),
        run("10. extremality of the odd-moment factor", None, || checks::extremal_odd_moment(seed)),
    ];

    let mut all_pass = true;
    for c in &criteria {
        let failed: Vec<&Check> = c.checks.iter().filter(|x| !x.pass).collect();
        let within_budget = c.budget_s.map(|b| c.elapsed_s <= b).unwrap_or(true);
        let pass = failed.is_empty() && within_budget;
        all_pass &= pass;
        println!(
            "[{}] {} ({} checks, {:.2}s{})",
            if pass { "PASS" } else { "FAIL" },
            c.name,
            c.checks.len(),
            c.elapsed_s,
            c.budget_s
                .map(|b| format!(", budget {b}s"))
                .unwrap_or_default()
        );
        for f in failed {
            println!(
                "       failed: {} (computed {:.10e}, expected {:?}, margin {:.3e})",
                f.id, f.computed, f.expected, f.margin
            );
        }
        if !within_budget {
            println!("       over time budget");
        }
    }
    assert!(all_pass, "acceptance criteria failed");
}
