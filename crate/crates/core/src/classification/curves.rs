//! Curves: the twisted dual syzygy bundle M^∨⊗L^{k+1} and the twisted
//! syzygy bundle M⊗L^{k−1} against L^a.

use serde::Serialize;

use super::{for_each_point, Mode, Order};
use crate::error::Result;
use crate::model::{
    BundleClass, ClassificationSolution, Family, SearchConfig, SheafExpr, SolutionParams,
};

fn curve_params(p: &[i64]) -> SolutionParams {
    SolutionParams::Curve {
        n: p[0],
        m: p[1],
        g: p[2],
        k: p[3],
        a: p[4],
    }
}

fn curve_ranges(cfg: &SearchConfig) -> [crate::model::IntRange; 5] {
    [cfg.n, cfg.m, cfg.g, cfg.k, cfg.a]
}

/// Solutions of m(n(a−k−1) − 1) = n(1 − g) with 0 ≤ k+1 < a.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CurveDualSearch {
    pub solutions: Vec<ClassificationSolution>,
    /// Tuples that solve the equation but need n = 1 on a curve other than
    /// P¹ embedded by O(1). Only filled in `Mode::Raw`.
    pub excluded: Vec<SolutionParams>,
}

fn dual_family(n: i64, m: i64, g: i64, k: i64, a: i64) -> Family {
    match (n, m, g) {
        (2, 2, 0) if a == k + 2 => Family::DualConic,
        (1, 1, 0) if a == k + 3 => Family::DualLine,
        _ => Family::Unexpected,
    }
}

pub fn solve_curve_dual_m(cfg: &SearchConfig) -> Result<Vec<ClassificationSolution>> {
    Ok(solve_curve_dual_m_in(cfg, &Order::natural(5), Mode::Constrained)?.solutions)
}

pub fn solve_curve_dual_m_in(
    cfg: &SearchConfig,
    order: &Order,
    mode: Mode,
) -> Result<CurveDualSearch> {
    cfg.validate()?;
    let mut out = CurveDualSearch::default();
    for_each_point(&curve_ranges(cfg), order, |p| {
        let (n, m, g, k, a) = (p[0], p[1], p[2], p[3], p[4]);
        if n < 1 || m < 1 || g < 0 {
            return;
        }
        // h⁰ ≠ 0 forces k+1 ≥ 0, vanishing after the first twist forces
        // k+1 < a; the one exception is P¹ embedded by O(1) with k = −2.
        let exceptional = n == 1 && k == -2 && a == 1;
        if !(0 <= k + 1 && k + 1 < a) && !exceptional {
            return;
        }
        if m * (n * (a - k - 1) - 1) != n * (1 - g) {
            return;
        }
        // n = 1 means X is embedded in P¹, so X = P¹ and L = O(1).
        if n == 1 && (g, m) != (0, 1) {
            if mode == Mode::Raw {
                out.excluded.push(curve_params(p));
            }
            return;
        }
        out.solutions.push(ClassificationSolution {
            family: dual_family(n, m, g, k, a),
            params: curve_params(p),
        });
    });
    out.solutions.sort();
    out.excluded.sort();
    Ok(out)
}

/// The three cases for M⊗L^{k−1} against L^a once 0 < k − 1 ≤ a.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CurveSyzygySearch {
    /// a = k − 1: V complete and h¹(L) = (n+1)g, i.e. m = n(1 − g).
    pub solutions: Vec<ClassificationSolution>,
    /// Grid points with a = k, all ruled out by h¹(M⊗L^{−1}) ≠ 0.
    pub impossible_a_eq_k: usize,
    /// a > k: integer solutions of m(n(a+1−k) + 1) = n(1 − g).
    pub a_gt_k: Vec<SolutionParams>,
}

pub fn solve_curve_m(cfg: &SearchConfig) -> Result<Vec<ClassificationSolution>> {
    Ok(solve_curve_m_in(cfg, &Order::natural(5))?.solutions)
}

pub fn solve_curve_m_in(cfg: &SearchConfig, order: &Order) -> Result<CurveSyzygySearch> {
    cfg.validate()?;
    let mut out = CurveSyzygySearch::default();
    for_each_point(&curve_ranges(cfg), order, |p| {
        let (n, m, g, k, a) = (p[0], p[1], p[2], p[3], p[4]);
        if n < 1 || m < 1 || g < 0 || !(0 < k - 1 && k - 1 <= a) {
            return;
        }
        if a == k - 1 {
            // χ(L) = m + 1 − g with h⁰(L) = n + 1 and h¹(L) = (n+1)g.
            if m == n * (1 - g) {
                let family = if g == 0 && m == n {
                    Family::SyzygyRationalNormal
                } else {
                    Family::Unexpected
                };
                out.solutions.push(ClassificationSolution {
                    family,
                    params: curve_params(p),
                });
            }
        } else if a == k {
            out.impossible_a_eq_k += 1;
        } else if m * (n * (a + 1 - k) + 1) == n * (1 - g) {
            out.a_gt_k.push(curve_params(p));
        }
    });
    out.solutions.sort();
    out.a_gt_k.sort();
    Ok(out)
}

/// Realizes a rational-normal-curve tuple (g = 0, m = n) on P¹: returns
/// the bundle and polarization for the dual or the plain syzygy shape.
pub fn realize_on_p1(params: &SolutionParams, dual: bool) -> Option<(SheafExpr, BundleClass)> {
    let SolutionParams::Curve { n, m, g, k, a } = *params else {
        return None;
    };
    if g != 0 || m != n || n < 1 {
        return None;
    }
    let line = BundleClass::Degree(m);
    let e = if dual {
        SheafExpr::dual_syzygy(line, line.scale(k + 1))
    } else {
        SheafExpr::syzygy(line, line.scale(k - 1))
    };
    Some((e, line.scale(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::IntRange;

    #[test]
    fn dual_families_in_default_ranges() {
        let sols = solve_curve_dual_m(&SearchConfig::curves()).unwrap();
        assert!(sols.iter().all(|s| s.family != Family::Unexpected));
        let conic: Vec<_> = sols
            .iter()
            .filter(|s| s.family == Family::DualConic)
            .collect();
        let line: Vec<_> = sols
            .iter()
            .filter(|s| s.family == Family::DualLine)
            .collect();
        assert_eq!(conic.len() + line.len(), sols.len());
        // a = k + 2 ≤ 12 with k ≥ −1: k ∈ [−1, 8]
        assert_eq!(conic.len(), 10);
        // a = k + 3 ≤ 12 with k ≥ −2: k ∈ [−2, 8]
        assert_eq!(line.len(), 11);
    }

    #[test]
    fn genus_one_slice_is_empty() {
        let mut cfg = SearchConfig::curves();
        cfg.g = IntRange::new(1, 1);
        assert!(solve_curve_dual_m(&cfg).unwrap().is_empty());
        let raw = solve_curve_dual_m_in(&cfg, &Order::natural(5), Mode::Raw).unwrap();
        assert!(raw.solutions.is_empty());
        assert!(!raw.excluded.is_empty());
        assert!(raw
            .excluded
            .iter()
            .all(|p| matches!(p, SolutionParams::Curve { n: 1, g: 1, .. })));
    }

    #[test]
    fn large_a_slice_is_empty() {
        let sols = solve_curve_dual_m(&SearchConfig::curves()).unwrap();
        assert!(sols
            .iter()
            .all(|s| matches!(s.params, SolutionParams::Curve { k, a, .. } if a <= k + 3)));
    }

    #[test]
    fn syzygy_family_one_per_n_and_k() {
        let search = solve_curve_m_in(&SearchConfig::curves(), &Order::natural(5)).unwrap();
        // k ∈ [2, 8] and n ∈ [1, 15]
        assert_eq!(search.solutions.len(), 7 * 15);
        assert!(search
            .solutions
            .iter()
            .all(|s| s.family == Family::SyzygyRationalNormal));
        assert!(search.a_gt_k.is_empty());
        assert!(search.impossible_a_eq_k > 0);
        assert!(search.solutions.iter().any(|s| s.params
            == SolutionParams::Curve {
                n: 1,
                m: 1,
                g: 0,
                k: 3,
                a: 2
            }));
    }

    #[test]
    fn realization() {
        let p = SolutionParams::Curve {
            n: 3,
            m: 3,
            g: 0,
            k: 4,
            a: 3,
        };
        let (e, h) = realize_on_p1(&p, false).unwrap();
        assert_eq!(
            e,
            SheafExpr::syzygy(BundleClass::Degree(3), BundleClass::Degree(9))
        );
        assert_eq!(h, BundleClass::Degree(9));
        assert!(realize_on_p1(
            &SolutionParams::Curve {
                n: 3,
                m: 4,
                g: 0,
                k: 0,
                a: 1
            },
            true
        )
        .is_none());
    }
}
