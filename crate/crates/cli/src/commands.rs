//! One function per subcommand, each producing a `Report`.

use std::path::Path;

use serde_json::{json, Value};
use ulrich_core::classification::{
    self, check_prop52, Mode, Order, Prop52Verdict,
};
use ulrich_core::cohomology::coh;
use ulrich_core::riemann_roch::chi_sheaf;
use ulrich_core::ulrich::{
    self, check_h0_equals_rm, is_ulrich, restriction_witness, BundleKind, SweepPoint,
};
use ulrich_core::{
    BundleClass, ClassificationSolution, Family, IntersectionTable, SheafExpr, SolutionParams,
    TwistRow, UlrichReport, VarietyModel,
};

use crate::config::Config;
use crate::parse::{parse_class, parse_model, parse_sheaf};
use crate::report::{canonical, Check, Report};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, config or inputs: exit code 2.
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ulrich_core::Error> for CliError {
    fn from(e: ulrich_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<crate::parse::ParseError> for CliError {
    fn from(e: crate::parse::ParseError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<crate::config::ConfigError> for CliError {
    fn from(e: crate::config::ConfigError) -> Self {
        CliError::Usage(e.0)
    }
}

type Outcome = (Value, Vec<Check>);

fn rows(rows: &[TwistRow]) -> Value {
    rows.iter().map(|r| json!({"p": r.p, "h": r.dims.dims})).collect()
}

fn ulrich_json(r: &UlrichReport) -> Value {
    json!({
        "verdict": r.verdict,
        "table": rows(&r.table),
        "h0": r.h0,
        "rank": r.rank,
        "degree": r.degree,
        "rank_times_degree": r.rank_times_degree,
        "intermediate": rows(&r.intermediate),
        "notes": r.notes,
    })
}

pub fn check_ulrich(model: &str, sheaf: &str, h: &str) -> Result<Report, CliError> {
    let model = parse_model(model)?;
    let e = parse_sheaf(&model, sheaf)?;
    let h = parse_class(&model, h)?;
    let report = is_ulrich(&model, &e, &h)?;

    let mut mismatches = Vec::new();
    for row in &report.table {
        let twisted = e.twist(&model, &h.scale(-row.p))?;
        let chi = chi_sheaf(&model, &twisted)?;
        if chi != row.dims.euler() {
            mismatches.push(format!("p={}: {} vs chi {chi}", row.p, row.dims));
        }
    }
    let mut checks = vec![Check::new(
        "euler_matches_riemann_roch",
        mismatches.is_empty(),
        mismatches.join("; "),
    )];
    if report.verdict {
        checks.push(Check::new(
            "h0_equals_rank_times_degree",
            check_h0_equals_rm(&report)?,
            format!("h0 = {}, r*deg = {}", report.h0, report.rank_times_degree),
        ));
    }
    let mut results = ulrich_json(&report);
    results["model"] = json!(model.to_string());
    results["sheaf"] = json!(e.to_string());
    results["polarization"] = json!(h.to_string());
    Ok(Report {
        command: "check-ulrich".into(),
        config: json!({"model": model.to_string(), "sheaf": e.to_string(), "H": h.to_string()}),
        results,
        checks,
    })
}

pub fn coh_cmd(model: &str, sheaf: &str) -> Result<Report, CliError> {
    let model = parse_model(model)?;
    let e = parse_sheaf(&model, sheaf)?;
    let v = coh(&model, &e)?;
    let chi = chi_sheaf(&model, &e)?;
    Ok(Report {
        command: "coh".into(),
        config: json!({"model": model.to_string(), "sheaf": e.to_string()}),
        results: json!({
            "model": model.to_string(),
            "sheaf": e.to_string(),
            "h": v.dims,
            "euler": v.euler(),
            "chi": chi,
        }),
        checks: vec![Check::new(
            "euler_matches_riemann_roch",
            chi == v.euler(),
            format!("euler {} vs chi {chi}", v.euler()),
        )],
    })
}

fn solution_json(s: &ClassificationSolution) -> Value {
    json!({"family": s.family.id(), "tuple": s.params.as_vec()})
}

fn tuples(ps: &[SolutionParams]) -> Value {
    ps.iter().map(|p| p.as_vec()).collect()
}

fn families(sols: &[ClassificationSolution]) -> Vec<&'static str> {
    let mut f: Vec<Family> = sols.iter().map(|s| s.family).collect();
    f.sort();
    f.dedup();
    f.into_iter().map(|f| f.id()).collect()
}

fn unexpected_check(name: &str, sols: &[ClassificationSolution]) -> Check {
    let bad: Vec<String> = sols
        .iter()
        .filter(|s| s.family == Family::Unexpected)
        .map(|s| format!("{:?}", s.params.as_vec()))
        .collect();
    Check::new(
        format!("{name}.no_unexpected"),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} solutions, families {:?}", sols.len(), families(sols))
        } else {
            format!("unexpected: {}", bad.join(", "))
        },
    )
}

fn mode(raw: bool) -> Mode {
    if raw {
        Mode::Raw
    } else {
        Mode::Constrained
    }
}

pub fn curves_dual(cfg: &Config, raw: bool) -> Result<Outcome, CliError> {
    let search = classification::solve_curve_dual_m_in(&cfg.curves()?, &Order::natural(5), mode(raw))?;
    let sols = &search.solutions;
    let results = json!({
        "fields": ["n", "m", "g", "k", "a"],
        "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
        "families": families(sols),
        "unexpected": sols.iter().filter(|s| s.family == Family::Unexpected).count(),
        "excluded_by_model": tuples(&search.excluded),
    });
    Ok((results, vec![unexpected_check("curves_dual", sols)]))
}

pub fn curves_syz(cfg: &Config) -> Result<Outcome, CliError> {
    let search = classification::solve_curve_m_in(&cfg.curves()?, &Order::natural(5))?;
    let sols = &search.solutions;
    let results = json!({
        "fields": ["n", "m", "g", "k", "a"],
        "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
        "families": families(sols),
        "unexpected": sols.iter().filter(|s| s.family == Family::Unexpected).count(),
        "impossible_a_eq_k": search.impossible_a_eq_k,
        "a_gt_k": tuples(&search.a_gt_k),
    });
    Ok((
        results,
        vec![
            unexpected_check("curves_syz", sols),
            Check::new(
                "curves_syz.a_gt_k_empty",
                search.a_gt_k.is_empty(),
                format!("{} solutions with a > k", search.a_gt_k.len()),
            ),
        ],
    ))
}

pub fn surfaces_dual(cfg: &Config, raw: bool) -> Result<Outcome, CliError> {
    let search =
        classification::solve_surface_dual_m_in(&cfg.surfaces()?, &Order::natural(4), mode(raw))?;
    let sols = &search.solutions;
    let genera: Vec<Value> = sols
        .iter()
        .map(|s| json!(classification::surface_sectional_genus(&s.params)))
        .collect();
    let genus_zero = sols
        .iter()
        .all(|s| classification::surface_sectional_genus(&s.params) == Some(0));
    let results = json!({
        "fields": ["n", "l2", "k", "a"],
        "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
        "sectional_genus": genera,
        "families": families(sols),
        "unexpected": sols.iter().filter(|s| s.family == Family::Unexpected).count(),
        "excluded_by_model": tuples(&search.excluded),
    });
    Ok((
        results,
        vec![
            unexpected_check("surfaces_dual", sols),
            Check::new("surfaces_dual.genus_zero", genus_zero, format!("g_H = {genera:?}")),
        ],
    ))
}

pub fn p1xp1_example(cfg: &Config) -> Result<Outcome, CliError> {
    let s = classification::example_p1xp1_search(&cfg.p1xp1()?)?;
    let results = json!({
        "points": s.points,
        "counts": {
            "c1": s.c1,
            "c2": s.c2,
            "chi": s.chi,
            "chi_riemann_roch": s.chi_rr,
            "c1_and_c2": s.c1_and_c2,
        },
        "c1_example": s.c1_example.map(|(a, b, k)| vec![a, b, k]),
        "fields": ["a", "b", "k"],
        "solutions": s.triple.iter().map(|&(a, b, k)| vec![a, b, k]).collect::<Vec<_>>(),
    });
    Ok((
        results,
        vec![Check::new(
            "p1xp1_example.no_solutions",
            s.triple.is_empty(),
            format!("{} simultaneous solutions", s.triple.len()),
        )],
    ))
}

fn prop52_json(label: &str, table: &IntersectionTable, k: i64) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    out.insert("table".into(), json!(label));
    out.insert("k".into(), json!(k));
    for (name, kind) in [("dual", BundleKind::Dual), ("syzygy", BundleKind::Syzygy)] {
        let c = check_prop52(table, k, kind)?;
        let verdict = match c.verdict {
            Prop52Verdict::Holds => "holds",
            Prop52Verdict::Fails => "fails",
            Prop52Verdict::NonIntegral => "non_integral",
        };
        out.insert(name.into(), json!({"verdict": verdict, "lhs_scaled": c.lhs_scaled, "rhs_scaled": c.rhs_scaled}));
    }
    Ok(Value::Object(out))
}

pub fn prop52_scan(cfg: &Config) -> Result<Outcome, CliError> {
    let cor = classification::cor53_exhaustive(&cfg.cor53())?;
    let (components, k) = cfg.obstruction();
    let cases = classification::obstruction_sweep(components, k)?;
    let q = VarietyModel::QuadricSurface;
    let p2 = VarietyModel::ProjSpace(2);
    let d = BundleClass::Bidegree;
    let examples = vec![
        prop52_json("P2, L=1, H=2", &IntersectionTable::concrete(&p2, &BundleClass::Degree(1), &BundleClass::Degree(2))?, 0)?,
        prop52_json("P1xP1, L=1,1, H=1,1", &IntersectionTable::concrete(&q, &d(1, 1), &d(1, 1))?, 0)?,
        prop52_json("P1xP1, L=1,4, H=2,6", &IntersectionTable::concrete(&q, &d(1, 4), &d(2, 6))?, 2)?,
    ];
    let ulrich_cases: Vec<String> = cases
        .iter()
        .filter(|c| c.ulrich)
        .map(|c| format!("L={} H={} k={}", c.l, c.h, c.k))
        .collect();
    let results = json!({
        "simultaneous": {
            "cases": cor.cases,
            "violations": cor.violations,
            "fields": ["lh", "h2", "hk", "n", "k"],
        },
        "obstruction": cases
            .iter()
            .map(|c| json!({"L": c.l.to_string(), "H": c.h.to_string(), "k": c.k, "ulrich": c.ulrich}))
            .collect::<Vec<_>>(),
        "examples": examples,
    });
    Ok((
        results,
        vec![
            Check::new(
                "prop52_scan.never_simultaneous",
                cor.violations.is_empty(),
                format!("{} cases, {} violations", cor.cases, cor.violations.len()),
            ),
            Check::new(
                "prop52_scan.obstruction_not_ulrich",
                ulrich_cases.is_empty() && !cases.is_empty(),
                if ulrich_cases.is_empty() {
                    format!("{} obstructed cases, none Ulrich", cases.len())
                } else {
                    format!("Ulrich despite obstruction: {}", ulrich_cases.join(", "))
                },
            ),
        ],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyTarget {
    CurvesDual,
    CurvesSyz,
    SurfacesDual,
    P1xP1Example,
    Prop52Scan,
}

impl ClassifyTarget {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifyTarget::CurvesDual => "curves-dual",
            ClassifyTarget::CurvesSyz => "curves-syz",
            ClassifyTarget::SurfacesDual => "surfaces-dual",
            ClassifyTarget::P1xP1Example => "p1xp1-example",
            ClassifyTarget::Prop52Scan => "prop52-scan",
        }
    }
}

pub fn classify(target: ClassifyTarget, cfg: &Config, raw: bool) -> Result<Report, CliError> {
    let (results, checks) = match target {
        ClassifyTarget::CurvesDual => curves_dual(cfg, raw)?,
        ClassifyTarget::CurvesSyz => curves_syz(cfg)?,
        ClassifyTarget::SurfacesDual => surfaces_dual(cfg, raw)?,
        ClassifyTarget::P1xP1Example => p1xp1_example(cfg)?,
        ClassifyTarget::Prop52Scan => prop52_scan(cfg)?,
    };
    Ok(Report {
        command: format!("classify {}", target.name()),
        config: json!(cfg),
        results,
        checks,
    })
}

fn point_json(p: &SweepPoint) -> Value {
    json!({
        "model": p.model,
        "L": p.line.to_string(),
        "kind": match p.kind { BundleKind::Dual => "dual", BundleKind::Syzygy => "syzygy" },
        "k": p.k,
        "a": p.a,
        "verdict": p.verdict,
        "expected": p.expected.map(|f| f.id()),
    })
}

/// Direct Ulrich witnesses on concrete models.
pub fn witnesses() -> Result<Outcome, CliError> {
    let p1 = VarietyModel::RationalCurve;
    let deg = BundleClass::Degree;
    let w = restriction_witness()?;
    let mut family_failures = Vec::new();
    let mut family_count = 0;
    for n in 1..=6 {
        for k in 2..=6 {
            let e = SheafExpr::syzygy(deg(n), deg(n * (k - 1)));
            family_count += 1;
            if !is_ulrich(&p1, &e, &deg(n * (k - 1)))?.verdict {
                family_failures.push(format!("n={n} k={k}"));
            }
        }
    }
    let exceptional = is_ulrich(&p1, &SheafExpr::dual_syzygy(deg(1), deg(-1)), &deg(1))?;
    let results = json!({
        "tangent_plane": ulrich_json(&w.ambient),
        "restricted_to_conic": {
            "sheaf": w.restricted_expr.to_string(),
            "split_candidates": w.split_candidates,
            "as_split_bundle": ulrich_json(&w.restricted),
            "as_syzygy_expression": ulrich_json(&w.restricted_direct),
        },
        "direct_sum": ulrich_json(&w.direct_sum),
        "syzygy_family": {"cases": family_count, "failures": family_failures},
        "exceptional_line": ulrich_json(&exceptional),
    });
    let checks = vec![
        Check::new(
            "witnesses.tangent_plane",
            w.ambient.verdict && w.ambient.h0 == 8 && w.ambient.rank_times_degree == 8,
            format!("verdict {}, h0 {}, r*deg {}", w.ambient.verdict, w.ambient.h0, w.ambient.rank_times_degree),
        ),
        Check::new(
            "witnesses.restriction_to_conic",
            w.split_candidates == vec![vec![3, 3]] && w.restricted.verdict && w.restricted_direct.verdict,
            format!("splitting types {:?}", w.split_candidates),
        ),
        Check::new("witnesses.direct_sum", w.direct_sum.verdict, format!("h0 {}", w.direct_sum.h0)),
        Check::new(
            "witnesses.syzygy_family",
            family_failures.is_empty(),
            format!("{family_count} cases, failures {family_failures:?}"),
        ),
        Check::new(
            "witnesses.exceptional_line",
            exceptional.verdict && exceptional.h0 == 1,
            format!("verdict {}, h0 {}", exceptional.verdict, exceptional.h0),
        ),
    ];
    Ok((results, checks))
}

pub fn sweep(cfg: &Config) -> Result<(Value, Value, Vec<Check>), CliError> {
    let sweep_cfg = cfg.sweep()?;
    let s = ulrich::exclusivity_sweep(&sweep_cfg)?;
    let laws = ulrich::h0_laws(&sweep_cfg)?;
    let law_case = |c: &ulrich::LawCase| json!({"model": c.model, "L": c.line.to_string(), "k": c.k, "h0": c.h0});
    let exclusivity = json!({
        "points": s.points,
        "ulrich": s.ulrich.iter().map(point_json).collect::<Vec<_>>(),
        "discrepancies": s.discrepancies.iter().map(point_json).collect::<Vec<_>>(),
        "h0_rank_degree_failures": s.h0_rm_failures.iter().map(point_json).collect::<Vec<_>>(),
        "euler_checks": s.euler_checks,
        "euler_mismatches": s.euler_mismatches,
        "oracle_checks": s.oracle_checks,
        "oracle_mismatches": s.oracle_mismatches,
    });
    let h0 = json!({
        "cases": laws.cases,
        "dual_counterexamples": laws.dual_counterexamples.iter().map(law_case).collect::<Vec<_>>(),
        "syzygy_counterexamples": laws.syzygy_counterexamples.iter().map(law_case).collect::<Vec<_>>(),
        "exceptional": laws.exceptional.iter().map(law_case).collect::<Vec<_>>(),
    });
    let describe = |p: &SweepPoint| {
        format!(
            "{} L={} {} k={} a={}: verdict {}, expected {}",
            p.model,
            p.line,
            if p.kind == BundleKind::Dual { "dual" } else { "syzygy" },
            p.k,
            p.a,
            p.verdict,
            p.expected.map_or("none", |f| f.id())
        )
    };
    let checks = vec![
        Check::new(
            "exclusivity.matches_classification",
            s.discrepancies.is_empty(),
            if s.discrepancies.is_empty() {
                format!("{} points, {} Ulrich", s.points, s.ulrich.len())
            } else {
                s.discrepancies.iter().map(describe).collect::<Vec<_>>().join("; ")
            },
        ),
        Check::new(
            "exclusivity.h0_equals_rank_times_degree",
            s.h0_rm_failures.is_empty(),
            format!("{} failures", s.h0_rm_failures.len()),
        ),
        Check::new(
            "consistency.euler",
            s.euler_mismatches.is_empty(),
            format!("{} checks, {} mismatches", s.euler_checks, s.euler_mismatches.len()),
        ),
        Check::new(
            "consistency.oracles",
            s.oracle_mismatches.is_empty(),
            format!("{} checks, {} mismatches", s.oracle_checks, s.oracle_mismatches.len()),
        ),
        Check::new(
            "h0_laws",
            laws.passed(),
            format!(
                "{} cases, {} + {} counterexamples, exceptional h0 {:?}",
                laws.cases,
                laws.dual_counterexamples.len(),
                laws.syzygy_counterexamples.len(),
                laws.exceptional.iter().map(|c| c.h0).collect::<Vec<_>>()
            ),
        ),
    ];
    Ok((exclusivity, h0, checks))
}

/// Runs everything. With `golden`, the report is also compared against a
/// stored report.
pub fn verify_theorem(cfg: &Config, golden: Option<&Path>) -> Result<Report, CliError> {
    let mut results = serde_json::Map::new();
    let mut checks = Vec::new();
    let mut add = |name: &str, (v, c): Outcome| {
        results.insert(name.to_string(), v);
        checks.extend(c);
    };
    add("witnesses", witnesses()?);
    let (exclusivity, h0, sweep_checks) = sweep(cfg)?;
    add("exclusivity", (exclusivity, sweep_checks));
    add("h0_laws", (h0, vec![]));
    add("curves_dual", curves_dual(cfg, false)?);
    add("curves_syz", curves_syz(cfg)?);
    add("surfaces_dual", surfaces_dual(cfg, false)?);
    add("p1xp1_example", p1xp1_example(cfg)?);
    add("prop52_scan", prop52_scan(cfg)?);
    let mut report = Report {
        command: "verify-theorem".into(),
        config: json!(cfg),
        results: Value::Object(results),
        checks,
    };
    if let Some(path) = golden {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read golden file {}: {e}", path.display())))?;
        let stored: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("golden file {} is not JSON: {e}", path.display())))?;
        let fresh = report.to_json();
        let diff = first_difference(&canonical(&stored), &fresh, "$");
        report.checks.push(Check::new(
            "golden_match",
            diff.is_none(),
            diff.unwrap_or_else(|| format!("identical to {}", path.file_name().unwrap_or_default().to_string_lossy())),
        ));
    }
    Ok(report)
}

/// Path of the first place two JSON values differ.
fn first_difference(a: &Value, b: &Value, path: &str) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for k in x.keys().chain(y.keys().filter(|k| !x.contains_key(*k))) {
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => {
                        if let Some(d) = first_difference(u, v, &format!("{path}.{k}")) {
                            return Some(d);
                        }
                    }
                    _ => return Some(format!("{path}.{k} present on one side only")),
                }
            }
            None
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!("{path}: length {} vs {}", x.len(), y.len()));
            }
            x.iter()
                .zip(y)
                .enumerate()
                .find_map(|(i, (u, v))| first_difference(u, v, &format!("{path}[{i}]")))
        }
        _ => (a != b).then(|| format!("{path}: {a} vs {b}")),
    }
}
