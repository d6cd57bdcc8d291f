//! Euler characteristics and numerical invariants on curves and surfaces.
//!
//! Everything here is computed from Riemann–Roch and intersection numbers
//! alone; nothing calls into the cohomology engine, so the two can be
//! compared.

use crate::error::{Error, Result};
use crate::model::{BundleClass, DivisorNumbers, IntersectionTable, SheafExpr, VarietyModel};

/// χ(O_C(D)) = deg D + 1 − g on a curve of genus g.
pub fn chi_curve(genus: i64, deg: i64) -> i64 {
    deg + 1 - genus
}

/// χ(O_X(D)) = χ(O_X) + (D² − D·K)/2. Rejects odd D² − D·K.
pub fn chi_surface(table: &IntersectionTable, d: &DivisorNumbers) -> Result<i64> {
    let twice = d.square - d.dot_canonical;
    if twice.rem_euclid(2) != 0 {
        return Err(Error::Parity(twice));
    }
    Ok(table.chi_o + twice / 2)
}

/// Genus of a smooth member of |H| by adjunction: 2g − 2 = H² + H·K.
pub fn sectional_genus(h: &DivisorNumbers) -> Result<i64> {
    let twice = h.square + h.dot_canonical;
    if twice.rem_euclid(2) != 0 {
        return Err(Error::Parity(twice));
    }
    Ok(1 + twice / 2)
}

/// χ(O(d)) on Pⁿ as the Hilbert polynomial (d+1)(d+2)…(d+n)/n!, valid for
/// every integer d.
pub fn chi_proj(n: u32, d: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 1..=n as i128 {
        num *= d as i128 + j;
        den *= j;
    }
    (num / den) as i64
}

/// χ of a line bundle on any model.
pub fn chi_line(model: &VarietyModel, c: &BundleClass) -> Result<i64> {
    model.check(c)?;
    match (model, c) {
        (VarietyModel::RationalCurve, BundleClass::Degree(d)) => Ok(chi_curve(0, *d)),
        (VarietyModel::ProjSpace(n), BundleClass::Degree(d)) => Ok(chi_proj(*n, *d)),
        (VarietyModel::AbstractCurve { genus }, BundleClass::Degree(d)) => {
            Ok(chi_curve(*genus as i64, *d))
        }
        (VarietyModel::QuadricSurface, BundleClass::Bidegree(a, b)) => {
            let table = IntersectionTable {
                l2: 2,
                lk: -4,
                h2: 2,
                lh: 2,
                hk: -4,
                chi_o: 1,
                n: 3,
            };
            // (a,b)² = 2ab, (a,b)·K = −2a − 2b
            let numbers = DivisorNumbers {
                square: 2 * a * b,
                dot_canonical: -2 * a - 2 * b,
            };
            chi_surface(&table, &numbers)
        }
        (VarietyModel::AbstractSurface(table), BundleClass::Combo { l, h }) => {
            chi_surface(table, &table.numbers(*l, *h))
        }
        _ => unreachable!("checked"),
    }
}

/// χ of a sheaf expression via the defining sequences:
/// χ(M(t)) = (n+1)χ(t) − χ(L+t) and χ(M^∨(t)) = (n+1)χ(t) − χ(t−L), with
/// n + 1 = χ(L) for very ample L on the concrete models.
pub fn chi_sheaf(model: &VarietyModel, e: &SheafExpr) -> Result<i64> {
    match e {
        SheafExpr::Line(c) => chi_line(model, c),
        SheafExpr::Syzygy { line, twist } => {
            let v = chi_line(model, line)?;
            Ok(v * chi_line(model, twist)? - chi_line(model, &model.tensor(line, twist)?)?)
        }
        SheafExpr::DualSyzygy { line, twist } => {
            let v = chi_line(model, line)?;
            Ok(v * chi_line(model, twist)? - chi_line(model, &model.tensor(twist, &line.neg())?)?)
        }
        SheafExpr::Sum(parts) => parts.iter().map(|p| chi_sheaf(model, p)).sum(),
    }
}

/// deg_H X = H^d.
pub fn degree_under(model: &VarietyModel, h: &BundleClass) -> Result<u64> {
    model.check(h)?;
    let ample_err = || Error::NotAmple(h.to_string(), model.to_string());
    match (model, h) {
        (
            VarietyModel::RationalCurve | VarietyModel::AbstractCurve { .. },
            BundleClass::Degree(d),
        ) => {
            if *d < 1 {
                return Err(ample_err());
            }
            Ok(*d as u64)
        }
        (VarietyModel::ProjSpace(n), BundleClass::Degree(d)) => {
            if *d < 1 {
                return Err(ample_err());
            }
            Ok((*d as u64).pow(*n))
        }
        (VarietyModel::QuadricSurface, BundleClass::Bidegree(a, b)) => {
            if *a < 1 || *b < 1 {
                return Err(ample_err());
            }
            Ok(2 * (*a as u64) * (*b as u64))
        }
        (VarietyModel::AbstractSurface(table), BundleClass::Combo { l, h: hh }) => {
            let sq = table.numbers(*l, *hh).square;
            if sq < 1 {
                return Err(ample_err());
            }
            Ok(sq as u64)
        }
        _ => unreachable!("checked"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_table() -> IntersectionTable {
        IntersectionTable::concrete(
            &VarietyModel::ProjSpace(2),
            &BundleClass::Degree(1),
            &BundleClass::Degree(2),
        )
        .unwrap()
    }

    fn quadric_table() -> IntersectionTable {
        IntersectionTable::concrete(
            &VarietyModel::QuadricSurface,
            &BundleClass::Bidegree(1, 1),
            &BundleClass::Bidegree(2, 6),
        )
        .unwrap()
    }

    #[test]
    fn curve_chi() {
        assert_eq!(chi_curve(0, 3), 4);
        assert_eq!(chi_curve(1, 0), 0);
        assert_eq!(chi_curve(2, 5), 4);
    }

    #[test]
    fn surface_chi() {
        let p2 = p2_table();
        assert_eq!(chi_surface(&p2, &p2.numbers(1, 0)).unwrap(), 3);
        let q = quadric_table();
        assert_eq!(chi_surface(&q, &q.numbers(1, 0)).unwrap(), 4);
        assert_eq!(chi_surface(&q, &q.numbers(0, 0)).unwrap(), 1);
        let odd = DivisorNumbers {
            square: 1,
            dot_canonical: 0,
        };
        assert_eq!(chi_surface(&q, &odd), Err(Error::Parity(1)));
    }

    #[test]
    fn genus_by_adjunction() {
        let p2 = p2_table();
        assert_eq!(sectional_genus(&p2.numbers(0, 1)).unwrap(), 0);
        let q = quadric_table();
        assert_eq!(sectional_genus(&q.numbers(0, 1)).unwrap(), 5);
        assert_eq!(sectional_genus(&q.numbers(1, 0)).unwrap(), 0);
        for a in 1..=6i64 {
            let t = IntersectionTable::concrete(
                &VarietyModel::ProjSpace(2),
                &BundleClass::Degree(1),
                &BundleClass::Degree(a),
            )
            .unwrap();
            assert_eq!(
                sectional_genus(&t.numbers(0, 1)).unwrap(),
                (a - 1) * (a - 2) / 2
            );
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(
            degree_under(&VarietyModel::ProjSpace(2), &BundleClass::Degree(2)).unwrap(),
            4
        );
        assert_eq!(
            degree_under(&VarietyModel::QuadricSurface, &BundleClass::Bidegree(1, 1)).unwrap(),
            2
        );
        assert_eq!(
            degree_under(&VarietyModel::RationalCurve, &BundleClass::Degree(5)).unwrap(),
            5
        );
        assert!(degree_under(&VarietyModel::RationalCurve, &BundleClass::Degree(0)).is_err());
    }

    #[test]
    fn chi_is_quadratic_in_multiples() {
        for t in [p2_table(), quadric_table()] {
            let chi = |m: i64| chi_surface(&t, &t.numbers(m, 0)).unwrap();
            for m in -10..=10 {
                assert_eq!(chi(m + 1) - 2 * chi(m) + chi(m - 1), t.l2);
            }
        }
    }

    #[test]
    fn hilbert_polynomial_vanishes_in_the_gap() {
        for n in 1..=4u32 {
            for d in -(n as i64)..=-1 {
                assert_eq!(chi_proj(n, d), 0);
            }
            assert_eq!(
                chi_proj(n, -(n as i64) - 1),
                if n % 2 == 0 { 1 } else { -1 }
            );
        }
    }
}
