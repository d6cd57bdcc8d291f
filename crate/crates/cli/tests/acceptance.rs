//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion does. Run with `--nocapture` to see the lines.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ulrich_core::classification::{
    cor53_exhaustive, example_p1xp1_search, obstruction_sweep, solve_curve_dual_m,
    solve_surface_dual_m, Cor53Bounds,
};
use ulrich_core::ulrich::{exclusivity_sweep, h0_laws, is_ulrich, restriction_witness, SweepConfig};
use ulrich_core::{BundleClass, IntRange, SearchConfig, SheafExpr, VarietyModel};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, budget: Duration) -> Outcome {
    outcome(elapsed < budget, format!("{elapsed:.2?} (budget {budget:?})"))
}

/// Combines correctness with a time budget.
fn timed(f: impl FnOnce() -> Outcome, budget: Duration) -> Outcome {
    let start = Instant::now();
    let o = f();
    let t = within(start.elapsed(), budget);
    outcome(o.passed && t.passed, format!("{}; {}", o.detail, t.detail))
}

fn criterion1() -> Outcome {
    let cfg = SearchConfig::curves();
    let got: BTreeSet<Vec<i64>> = solve_curve_dual_m(&cfg)
        .unwrap()
        .iter()
        .map(|s| s.params.as_vec())
        .collect();
    // Enumerated straight from the two family formulas.
    let mut want = BTreeSet::new();
    for k in cfg.k.iter() {
        for (n, a) in [(2, k + 2), (1, k + 3)] {
            if cfg.a.contains(a) {
                want.insert(vec![n, n, 0, k, a]);
            }
        }
    }
    let extra: Vec<_> = got.difference(&want).collect();
    let missing: Vec<_> = want.difference(&got).collect();
    outcome(
        extra.is_empty() && missing.is_empty(),
        format!("{} tuples, {} unexpected, {} missing", got.len(), extra.len(), missing.len()),
    )
}

fn criterion2() -> Outcome {
    let sols = solve_surface_dual_m(&SearchConfig::surfaces()).unwrap();
    let tuples: Vec<Vec<i64>> = sols.iter().map(|s| s.params.as_vec()).collect();
    outcome(tuples == vec![vec![2, 1, 0, 2]], format!("{tuples:?}"))
}

fn criterion3() -> Outcome {
    let budget = Duration::from_secs(1);
    let deg = BundleClass::Degree;
    let p1 = VarietyModel::RationalCurve;
    let mut lines = Vec::new();
    let mut ok = true;

    let start = Instant::now();
    let w = restriction_witness().unwrap();
    let t = start.elapsed();
    let tp2 = w.ambient.verdict && w.ambient.h0 == 8 && w.ambient.rank * w.ambient.degree == 8;
    ok &= tp2 && t < budget;
    lines.push(format!("TP2 h0={} {t:.2?}", w.ambient.h0));

    let start = Instant::now();
    let mut family_ok = true;
    for n in 1..=6 {
        for k in 2..=6 {
            // M_L = O(-1)^n on P1 for L = O(n); twisted by L^{k-1}
            let e = SheafExpr::syzygy(deg(n), deg(n * (k - 1)));
            let r = is_ulrich(&p1, &e, &deg(n * (k - 1))).unwrap();
            family_ok &= r.verdict && r.h0 == (n * n * (k - 1)) as u64;
        }
    }
    let t = start.elapsed();
    ok &= family_ok && t < budget;
    lines.push(format!("P1 family {family_ok} {t:.2?}"));

    let start = Instant::now();
    let r = is_ulrich(&p1, &SheafExpr::dual_syzygy(deg(1), deg(-1)), &deg(1)).unwrap();
    let t = start.elapsed();
    ok &= r.verdict && t < budget;
    lines.push(format!("exceptional {} {t:.2?}", r.verdict));
    outcome(ok, lines.join(", "))
}

fn criterion4_to_6() -> (Outcome, Outcome, Outcome) {
    let cfg = SweepConfig::default();
    let start = Instant::now();
    let s = exclusivity_sweep(&cfg).unwrap();
    let t = within(start.elapsed(), Duration::from_secs(60));
    let disc: Vec<String> = s
        .discrepancies
        .iter()
        .map(|p| format!("{} L={} {:?} k={} a={} verdict={}", p.model, p.line, p.kind, p.k, p.a, p.verdict))
        .collect();
    let c4 = outcome(
        disc.is_empty() && s.h0_rm_failures.is_empty() && t.passed,
        format!(
            "{} points, {} Ulrich, discrepancies [{}]; {}",
            s.points,
            s.ulrich.len(),
            disc.join("; "),
            t.detail
        ),
    );
    let laws = h0_laws(&cfg).unwrap();
    let c5 = outcome(
        laws.passed(),
        format!(
            "{} cases, {} counterexamples, exceptional h0 {:?}",
            laws.cases,
            laws.dual_counterexamples.len() + laws.syzygy_counterexamples.len(),
            laws.exceptional.iter().map(|c| c.h0).collect::<Vec<_>>()
        ),
    );
    let c6 = outcome(
        s.euler_checks > 0 && s.oracle_checks > 0 && s.euler_mismatches.is_empty() && s.oracle_mismatches.is_empty(),
        format!(
            "{} Euler checks, {} oracle checks, {} mismatches",
            s.euler_checks,
            s.oracle_checks,
            s.euler_mismatches.len() + s.oracle_mismatches.len()
        ),
    );
    (c4, c5, c6)
}

fn criterion7() -> Outcome {
    let p = example_p1xp1_search(&SearchConfig::p1xp1()).unwrap();
    let cor = cor53_exhaustive(&Cor53Bounds::default()).unwrap();
    let cases = obstruction_sweep(IntRange::new(1, 6), IntRange::new(-6, 6)).unwrap();
    let example = cases.iter().any(|c| {
        c.l == BundleClass::Bidegree(1, 4) && c.h == BundleClass::Bidegree(2, 6) && c.k == 2
    });
    let ulrich = cases.iter().filter(|c| c.ulrich).count();
    outcome(
        p.triple.is_empty() && cor.violations.is_empty() && example && ulrich == 0,
        format!(
            "P1xP1 search {} points {} solutions; {} tables {} violations; {} obstructed tuples {} Ulrich",
            p.points,
            p.triple.len(),
            cor.cases,
            cor.violations.len(),
            cases.len(),
            ulrich
        ),
    )
}

fn criterion8() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ulrich"))
            .arg("verify-theorem")
            .output()
            .unwrap()
            .stdout
    };
    let (a, b) = (run(), run());
    outcome(!a.is_empty() && a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

#[test]
fn acceptance() {
    let (c4, c5, c6) = criterion4_to_6();
    let results = [
        ("1 curve families", timed(criterion1, Duration::from_secs(5))),
        ("2 surface family", criterion2()),
        ("3 direct witnesses", criterion3()),
        ("4 exclusivity sweep", c4),
        ("5 h0 laws", c5),
        ("6 Euler and oracle consistency", c6),
        ("7 negative results", timed(criterion7, Duration::from_secs(30))),
        ("8 determinism", criterion8()),
    ];
    let mut failed = Vec::new();
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
