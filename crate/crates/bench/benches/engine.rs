use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ulrich_core::classification::{solve_curve_dual_m, solve_surface_dual_m};
use ulrich_core::cohomology::{bott, coh};
use ulrich_core::linalg::{bareiss_rank, SparseMatrix};
use ulrich_core::ulrich::is_ulrich;
use ulrich_core::{BundleClass, SearchConfig, SheafExpr, VarietyModel};

fn cohomology(c: &mut Criterion) {
    let p2 = VarietyModel::ProjSpace(2);
    let p3 = VarietyModel::ProjSpace(3);
    let q = VarietyModel::QuadricSurface;
    let d = BundleClass::Degree;

    let mut g = c.benchmark_group("cohomology");
    g.bench_function("tangent_p2_twist_3", |b| {
        let e = SheafExpr::dual_syzygy(d(1), d(3));
        b.iter(|| coh(black_box(&p2), black_box(&e)).unwrap())
    });
    g.bench_function("syzygy_p3_deg2_twist_1", |b| {
        let e = SheafExpr::syzygy(d(2), d(1));
        b.iter(|| coh(black_box(&p3), black_box(&e)).unwrap())
    });
    g.bench_function("dual_syzygy_quadric_1_4", |b| {
        let e = SheafExpr::dual_syzygy(BundleClass::Bidegree(1, 4), BundleClass::Bidegree(3, 12));
        b.iter(|| coh(black_box(&q), black_box(&e)).unwrap())
    });
    g.bench_function("bott_closed_form_p3", |b| {
        b.iter(|| bott::tangent_twist(black_box(3), black_box(-2)))
    });
    g.finish();
}

/// Banded 0/±1 matrix, like the monomial multiplication matrices, with
/// one dependent row.
fn banded(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i.saturating_sub(2)..(i + 3).min(n) {
            m[i][j] = ((i * 7 + j * 3) % 3) as i64 - 1;
        }
    }
    let last = m[0].iter().zip(&m[1]).map(|(x, y)| x + y).collect();
    m[n - 1] = last;
    m
}

fn ranks(c: &mut Criterion) {
    let dense = banded(60);
    let mut sparse = SparseMatrix::new(60);
    for j in 0..60 {
        sparse.push_column((0..60).filter(|&i| dense[i][j] != 0).map(|i| (i, dense[i][j])).collect());
    }
    let mut g = c.benchmark_group("rank");
    g.bench_function("bareiss_dense_60", |b| b.iter(|| bareiss_rank(black_box(&dense)).unwrap()));
    g.bench_function("sparse_echelon_60", |b| b.iter(|| black_box(&sparse).rank().unwrap()));
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.bench_function("curve_dual_default", |b| {
        let cfg = SearchConfig::curves();
        b.iter(|| solve_curve_dual_m(black_box(&cfg)).unwrap())
    });
    g.bench_function("surface_dual_default", |b| {
        let cfg = SearchConfig::surfaces();
        b.iter(|| solve_surface_dual_m(black_box(&cfg)).unwrap())
    });
    g.bench_function("is_ulrich_tangent_p2", |b| {
        let p2 = VarietyModel::ProjSpace(2);
        let e = SheafExpr::dual_syzygy(BundleClass::Degree(1), BundleClass::Degree(1));
        b.iter(|| is_ulrich(&p2, black_box(&e), &BundleClass::Degree(2)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, cohomology, ranks, solvers);
criterion_main!(benches);
