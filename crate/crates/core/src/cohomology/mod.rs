//! Exact cohomology of line bundles and (dual) syzygy bundles on P¹, Pⁿ
//! and P¹×P¹.
//!
//! Line bundles use the closed formulas. For M = M_{L,V} with V = H⁰(L),
//! the long exact sequences of
//!
//! ```text
//! 0 → M(t)   → V ⊗ O(t) → O(L + t) → 0
//! 0 → O(t−L) → V ⊗ O(t) → M^∨(t)   → 0
//! ```
//!
//! are chased with the exact rank of every connecting cup-product map,
//! computed from explicit monomial matrices.

pub mod basis;
pub mod bott;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::model::{BundleClass, CohomologyVector, SheafExpr, VarietyModel};

pub use basis::MonomialSpace;

/// A linear map known through its dimensions and exact rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankedMap {
    pub domain: u64,
    pub codomain: u64,
    pub rank: u64,
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// h⁰ and hⁿ of O(d) on Pⁿ.
fn proj_line(n: usize, d: i64) -> (u64, u64) {
    let n = n as i64;
    let h0 = if d >= 0 { binomial(n + d, n) } else { 0 };
    let dual = -d - n - 1;
    let hn = if dual >= 0 { binomial(n + dual, n) } else { 0 };
    (h0, hn)
}

/// Cohomology of a line bundle: closed formulas on each factor, combined
/// by Künneth.
pub fn coh_line(model: &VarietyModel, c: &BundleClass) -> Result<CohomologyVector> {
    let dims = model.factor_dims()?;
    let degs = model.factor_degrees(c)?;
    let mut out = CohomologyVector::zero(model.dim());
    for mask in 0u32..(1 << dims.len()) {
        let mut level = 0;
        let mut count = 1u64;
        for (f, (&n, &d)) in dims.iter().zip(&degs).enumerate() {
            let (h0, hn) = proj_line(n, d);
            if mask & (1 << f) != 0 {
                level += n;
                count *= hn;
            } else {
                count *= h0;
            }
        }
        out.dims[level] += count;
    }
    Ok(out)
}

/// Matrix of the cup product H⁰(c1) ⊗ H^level(b) → H^level(c1 + b).
/// Column `s·dim H^level(b) + x` holds the product of section `s` with
/// basis element `x`.
pub fn cup_matrix(
    model: &VarietyModel,
    c1: &BundleClass,
    b: &BundleClass,
    level: usize,
) -> Result<SparseMatrix> {
    let sections = MonomialSpace::for_class(model, c1, 0)?;
    let src = MonomialSpace::for_class(model, b, level)?;
    let tgt = MonomialSpace::for_class(model, &model.tensor(c1, b)?, level)?;
    let mut m = SparseMatrix::new(tgt.len());
    for s in sections.basis() {
        for x in src.basis() {
            let col = src.cup(s, x, &tgt).map(|i| (i, 1)).into_iter().collect();
            m.push_column(col);
        }
    }
    Ok(m)
}

/// Matrix of H^level(src) → V^∨ ⊗ H^level(src + L), x ↦ Σ_j σ_j^* ⊗ σ_j·x
/// over the monomial basis σ_j of V = H⁰(L). Row `j·dim H^level(src+L) + y`.
pub fn section_matrix(
    model: &VarietyModel,
    line: &BundleClass,
    src: &BundleClass,
    level: usize,
) -> Result<SparseMatrix> {
    let sections = MonomialSpace::for_class(model, line, 0)?;
    let from = MonomialSpace::for_class(model, src, level)?;
    let tgt = MonomialSpace::for_class(model, &model.tensor(line, src)?, level)?;
    let mut m = SparseMatrix::new(sections.len() * tgt.len());
    for x in from.basis() {
        let col = sections
            .basis()
            .iter()
            .enumerate()
            .filter_map(|(j, s)| from.cup(s, x, &tgt).map(|y| (j * tgt.len() + y, 1)))
            .collect();
        m.push_column(col);
    }
    Ok(m)
}

fn ranked(m: &SparseMatrix) -> Result<RankedMap> {
    let rank = if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()?
    };
    Ok(RankedMap {
        domain: m.cols() as u64,
        codomain: m.rows() as u64,
        rank: rank as u64,
    })
}

/// Rank of H⁰(c1) ⊗ H^level(b) → H^level(c1 + b).
pub fn cup_rank(
    model: &VarietyModel,
    c1: &BundleClass,
    b: &BundleClass,
    level: usize,
) -> Result<RankedMap> {
    if level > model.dim() {
        return Ok(RankedMap {
            domain: 0,
            codomain: 0,
            rank: 0,
        });
    }
    ranked(&cup_matrix(model, c1, b, level)?)
}

/// Multiplication of sections H⁰(c1) ⊗ H⁰(c2) → H⁰(c1 + c2).
pub fn mult_rank(model: &VarietyModel, c1: &BundleClass, c2: &BundleClass) -> Result<RankedMap> {
    cup_rank(model, c1, c2, 0)
}

/// Contraction H⁰(c1) ⊗ H¹(b) → H¹(c1 + b), the Serre-dual picture of a
/// multiplication map. Defined on models of dimension at most 2.
pub fn contract_rank(model: &VarietyModel, c1: &BundleClass, b: &BundleClass) -> Result<RankedMap> {
    if model.dim() > 2 {
        return Err(Error::InvalidModel(format!(
            "contraction on H¹ is only modelled for dimension ≤ 2, got {model}"
        )));
    }
    cup_rank(model, c1, b, 1)
}

/// Rank of H^level(src) → V^∨ ⊗ H^level(src + L).
pub fn section_rank(
    model: &VarietyModel,
    line: &BundleClass,
    src: &BundleClass,
    level: usize,
) -> Result<RankedMap> {
    if level > model.dim() {
        return Ok(RankedMap {
            domain: 0,
            codomain: 0,
            rank: 0,
        });
    }
    ranked(&section_matrix(model, line, src, level)?)
}

/// h^i(M_L ⊗ O(t)) from 0 → M(t) → V⊗O(t) → O(L+t) → 0:
/// h^i = dim ker(φ_i) + dim coker(φ_{i−1}), φ_i : V⊗H^i(t) → H^i(L+t).
pub fn coh_syzygy(
    model: &VarietyModel,
    line: &BundleClass,
    twist: &BundleClass,
) -> Result<CohomologyVector> {
    model.require_very_ample(line)?;
    model.check(twist)?;
    let d = model.dim();
    let v = coh_line(model, line)?.h0();
    let ht = coh_line(model, twist)?;
    let hlt = coh_line(model, &model.tensor(line, twist)?)?;
    let rank_at = |i: usize| -> Result<u64> {
        if ht.dims[i] == 0 || hlt.dims[i] == 0 {
            Ok(0)
        } else {
            Ok(cup_rank(model, line, twist, i)?.rank)
        }
    };
    let ranks: Vec<u64> = (0..=d).map(rank_at).collect::<Result<_>>()?;
    let dims = (0..=d)
        .map(|i| {
            let ker = v * ht.dims[i] - ranks[i];
            let coker = if i == 0 {
                0
            } else {
                hlt.dims[i - 1] - ranks[i - 1]
            };
            ker + coker
        })
        .collect();
    Ok(CohomologyVector::new(dims))
}

/// h^i(M_L^∨ ⊗ O(t)) from 0 → O(t−L) → V^∨⊗O(t) → M^∨(t) → 0:
/// h^i = dim coker(ψ_i) + dim ker(ψ_{i+1}), ψ_i : H^i(t−L) → V^∨⊗H^i(t).
pub fn coh_dual_syzygy(
    model: &VarietyModel,
    line: &BundleClass,
    twist: &BundleClass,
) -> Result<CohomologyVector> {
    model.require_very_ample(line)?;
    model.check(twist)?;
    let d = model.dim();
    let v = coh_line(model, line)?.h0();
    let ht = coh_line(model, twist)?;
    let src = model.tensor(twist, &line.neg())?;
    let hs = coh_line(model, &src)?;
    let rank_at = |i: usize| -> Result<u64> {
        if hs.dims[i] == 0 || ht.dims[i] == 0 {
            Ok(0)
        } else {
            Ok(section_rank(model, line, &src, i)?.rank)
        }
    };
    let ranks: Vec<u64> = (0..=d).map(rank_at).collect::<Result<_>>()?;
    let dims = (0..=d)
        .map(|i| {
            let coker = v * ht.dims[i] - ranks[i];
            let ker = if i == d {
                0
            } else {
                hs.dims[i + 1] - ranks[i + 1]
            };
            coker + ker
        })
        .collect();
    Ok(CohomologyVector::new(dims))
}

/// Cohomology of any sheaf expression on a concrete model.
pub fn coh(model: &VarietyModel, e: &SheafExpr) -> Result<CohomologyVector> {
    if !model.is_concrete() {
        return Err(Error::NoExactEngine(model.to_string()));
    }
    match e {
        SheafExpr::Line(c) => coh_line(model, c),
        SheafExpr::Syzygy { line, twist } => coh_syzygy(model, line, twist),
        SheafExpr::DualSyzygy { line, twist } => coh_dual_syzygy(model, line, twist),
        SheafExpr::Sum(parts) => {
            let mut acc = CohomologyVector::zero(model.dim());
            for p in parts {
                acc.add_assign(&coh(model, p)?);
            }
            Ok(acc)
        }
    }
}

fn is_p1(model: &VarietyModel) -> bool {
    matches!(
        model,
        VarietyModel::RationalCurve | VarietyModel::ProjSpace(1)
    )
}

/// Splitting type on P¹: M_{O(m)} = O(−1)^m and M^∨_{O(m)} = O(1)^m.
pub fn split_type_p1(model: &VarietyModel, e: &SheafExpr) -> Result<Vec<i64>> {
    if !is_p1(model) {
        return Err(Error::InvalidModel(format!(
            "splitting types are only computed on P1, got {model}"
        )));
    }
    e.validate(model)?;
    let deg = |c: &BundleClass| match c {
        BundleClass::Degree(d) => *d,
        _ => unreachable!("validated"),
    };
    let mut out = match e {
        SheafExpr::Line(c) => vec![deg(c)],
        SheafExpr::Syzygy { line, twist } => vec![deg(twist) - 1; deg(line) as usize],
        SheafExpr::DualSyzygy { line, twist } => vec![deg(twist) + 1; deg(line) as usize],
        SheafExpr::Sum(parts) => {
            let mut all = Vec::new();
            for p in parts {
                all.extend(split_type_p1(model, p)?);
            }
            all
        }
    };
    out.sort_unstable();
    Ok(out)
}

/// Cohomology of ⊕ O(e_i) on P¹.
pub fn coh_split_p1(split: &[i64]) -> CohomologyVector {
    let p1 = VarietyModel::RationalCurve;
    let mut acc = CohomologyVector::zero(1);
    for &e in split {
        acc.add_assign(&coh_line(&p1, &BundleClass::Degree(e)).expect("P1 degree"));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bareiss_rank;

    const P1: VarietyModel = VarietyModel::RationalCurve;
    const P2: VarietyModel = VarietyModel::ProjSpace(2);
    const Q: VarietyModel = VarietyModel::QuadricSurface;

    fn d(x: i64) -> BundleClass {
        BundleClass::Degree(x)
    }

    fn bd(a: i64, b: i64) -> BundleClass {
        BundleClass::Bidegree(a, b)
    }

    fn v(x: &[u64]) -> CohomologyVector {
        CohomologyVector::new(x.to_vec())
    }

    #[test]
    fn line_bundles() {
        assert_eq!(coh_line(&P2, &d(0)).unwrap(), v(&[1, 0, 0]));
        assert_eq!(coh_line(&P2, &d(-3)).unwrap(), v(&[0, 0, 1]));
        assert_eq!(coh_line(&Q, &bd(-2, 0)).unwrap(), v(&[0, 1, 0]));
        assert_eq!(coh_line(&Q, &bd(1, 4)).unwrap(), v(&[10, 0, 0]));
        assert_eq!(coh_line(&P1, &d(-5)).unwrap(), v(&[0, 4]));
        assert!(matches!(
            coh_line(&VarietyModel::AbstractCurve { genus: 1 }, &d(2)),
            Err(Error::NoExactEngine(_))
        ));
    }

    #[test]
    fn basis_sizes_match_closed_formulas() {
        for model in [P1, P2, VarietyModel::ProjSpace(3), Q] {
            let classes: Vec<BundleClass> = if model == Q {
                (-5..=5)
                    .flat_map(|a| (-5..=5).map(move |b| bd(a, b)))
                    .collect()
            } else {
                (-7..=7).map(d).collect()
            };
            for c in classes {
                let h = coh_line(&model, &c).unwrap();
                for (i, &hi) in h.dims.iter().enumerate() {
                    let s = MonomialSpace::for_class(&model, &c, i).unwrap();
                    assert_eq!(s.len() as u64, hi, "{model} {c} level {i}");
                }
            }
        }
    }

    #[test]
    fn mult_ranks() {
        let r = mult_rank(&P1, &d(2), &d(1)).unwrap();
        assert_eq!((r.domain, r.codomain, r.rank), (6, 4, 4));
        let r = mult_rank(&P1, &d(2), &d(-1)).unwrap();
        assert_eq!((r.domain, r.rank), (0, 0));
        let r = mult_rank(&Q, &bd(1, 1), &bd(0, 0)).unwrap();
        assert_eq!((r.domain, r.codomain, r.rank), (4, 4, 4));
        let dense = cup_matrix(&Q, &bd(1, 1), &bd(0, 0), 0).unwrap().to_dense();
        for row in &dense {
            assert_eq!(row.iter().sum::<i64>(), 1, "identity permutation");
        }
    }

    #[test]
    fn contract_ranks() {
        let r = contract_rank(&P1, &d(1), &d(-3)).unwrap();
        assert_eq!((r.domain, r.codomain, r.rank), (4, 1, 1));
        let r = contract_rank(&P1, &d(0), &d(-2)).unwrap();
        assert_eq!((r.domain, r.codomain, r.rank), (1, 1, 1));
        // H¹(O(1,−1)) = 0, so the quadric contraction is the zero map.
        let r = contract_rank(&Q, &bd(1, 1), &bd(0, -2)).unwrap();
        assert_eq!((r.domain, r.codomain, r.rank), (4, 0, 0));
        assert!(contract_rank(&VarietyModel::ProjSpace(3), &d(1), &d(-5)).is_err());
    }

    #[test]
    fn contraction_is_serre_dual_to_section_map() {
        // The transpose of H⁰(c)⊗H¹(b) → H¹(c+b) is, under Serre duality
        // on P¹, the level-0 map H⁰(−c−b−2) → H⁰(c)^∨ ⊗ H⁰(−b−2).
        for c in 0..=3 {
            for b in -8..=-2 {
                let contract = cup_matrix(&P1, &d(c), &d(b), 1).unwrap();
                let dense = contract.to_dense();
                let brute = if dense.is_empty() || dense[0].is_empty() {
                    0
                } else {
                    bareiss_rank(&dense).unwrap() as u64
                };
                let dual = section_rank(&P1, &d(c), &d(-c - b - 2), 0).unwrap();
                assert_eq!(brute, dual.rank, "c={c} b={b}");
                assert_eq!(contract_rank(&P1, &d(c), &d(b)).unwrap().rank, brute);
            }
        }
    }

    #[test]
    fn sparse_and_dense_ranks_agree() {
        let cases: Vec<(VarietyModel, BundleClass, BundleClass, usize)> = vec![
            (P1, d(2), d(1), 0),
            (P1, d(3), d(-6), 1),
            (P2, d(1), d(1), 0),
            (P2, d(2), d(-5), 2),
            (Q, bd(1, 2), bd(-3, 1), 1),
            (Q, bd(2, 1), bd(-3, -3), 2),
            (Q, bd(1, 1), bd(1, 2), 0),
        ];
        for (model, c, b, level) in cases {
            let m = cup_matrix(&model, &c, &b, level).unwrap();
            let dense = m.to_dense();
            let dr = if dense.is_empty() || dense[0].is_empty() {
                0
            } else {
                bareiss_rank(&dense).unwrap()
            };
            assert_eq!(m.rank().unwrap(), dr, "{model} {c} {b} {level}");
            let s = section_matrix(&model, &c, &b, level).unwrap();
            let dense = s.to_dense();
            let dr = if dense.is_empty() || dense[0].is_empty() {
                0
            } else {
                bareiss_rank(&dense).unwrap()
            };
            assert_eq!(s.rank().unwrap(), dr, "section {model} {c} {b} {level}");
        }
    }

    #[test]
    fn syzygy_examples() {
        assert_eq!(coh_syzygy(&P1, &d(2), &d(1)).unwrap(), v(&[2, 0]));
        for n in 1..=6 {
            assert_eq!(coh_syzygy(&P1, &d(n), &d(0)).unwrap(), v(&[0, 0]));
        }
        assert_eq!(coh_syzygy(&P2, &d(1), &d(1)).unwrap(), v(&[3, 0, 0]));
        assert_eq!(coh_syzygy(&P2, &d(1), &d(0)).unwrap(), v(&[0, 0, 0]));
        // Ω(0) on P²
        assert_eq!(coh_syzygy(&P2, &d(1), &d(-1)).unwrap(), v(&[0, 1, 0]));
    }

    #[test]
    fn dual_syzygy_examples() {
        assert_eq!(coh_dual_syzygy(&P2, &d(1), &d(1)).unwrap(), v(&[8, 0, 0]));
        // TP²(−2) = Ω(1) has no cohomology; TP²(−3) = Ω has h¹ = 1.
        assert_eq!(coh_dual_syzygy(&P2, &d(1), &d(-1)).unwrap(), v(&[0, 0, 0]));
        assert_eq!(coh_dual_syzygy(&P2, &d(1), &d(-2)).unwrap(), v(&[0, 1, 0]));
        assert_eq!(coh_dual_syzygy(&P1, &d(1), &d(0)).unwrap(), v(&[2, 0]));
        assert_eq!(coh_dual_syzygy(&P1, &d(1), &d(1)).unwrap(), v(&[3, 0]));
    }

    #[test]
    fn syzygy_requires_very_ample_line() {
        assert!(matches!(
            coh_syzygy(&Q, &bd(1, 0), &bd(0, 0)),
            Err(Error::NotVeryAmple(..))
        ));
        assert!(matches!(
            coh(
                &VarietyModel::AbstractCurve { genus: 0 },
                &SheafExpr::line(d(1))
            ),
            Err(Error::NoExactEngine(_))
        ));
    }

    #[test]
    fn splitting_types() {
        let s = |e: SheafExpr| split_type_p1(&P1, &e).unwrap();
        assert_eq!(s(SheafExpr::syzygy(d(3), d(0))), vec![-1, -1, -1]);
        assert_eq!(s(SheafExpr::dual_syzygy(d(2), d(2))), vec![3, 3]);
        assert_eq!(s(SheafExpr::line(d(5))), vec![5]);
        assert_eq!(
            s(SheafExpr::Sum(vec![
                SheafExpr::line(d(5)),
                SheafExpr::syzygy(d(2), d(1))
            ])),
            vec![0, 0, 5]
        );
        assert!(split_type_p1(&P2, &SheafExpr::line(d(1))).is_err());
    }

    #[test]
    fn les_matches_splitting_on_p1() {
        for m in 1..=8 {
            for t in -10..=10 {
                let syz = SheafExpr::syzygy(d(m), d(t));
                let dual = SheafExpr::dual_syzygy(d(m), d(t));
                for e in [syz, dual] {
                    let split = split_type_p1(&P1, &e).unwrap();
                    assert_eq!(coh(&P1, &e).unwrap(), coh_split_p1(&split), "{e}");
                }
            }
        }
    }

    #[test]
    fn serre_duality_on_p1() {
        for m in 1..=6 {
            for t in -8..=8 {
                let mut a = coh_syzygy(&P1, &d(m), &d(t)).unwrap().dims;
                let b = coh_dual_syzygy(&P1, &d(m), &d(-t - 2)).unwrap().dims;
                a.reverse();
                assert_eq!(a, b, "m={m} t={t}");
            }
        }
    }
}
