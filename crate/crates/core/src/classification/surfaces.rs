//! Surfaces: the L^a-Ulrich equation for M^∨⊗L^{k+1}, the conditions for
//! an arbitrary polarization H, and the P¹×P¹ examples.

use serde::Serialize;

use super::{for_each_point, Mode, Order};
use crate::cohomology::coh_line;
use crate::error::{Error, Result};
use crate::grid_map;
use crate::model::{
    BundleClass, ClassificationSolution, Family, IntRange, IntersectionTable, SearchConfig,
    SolutionParams, VarietyModel,
};
use crate::ulrich::{is_ulrich, BundleKind};

fn surface_params(p: &[i64]) -> SolutionParams {
    SolutionParams::Surface {
        n: p[0],
        l2: p[1],
        k: p[2],
        a: p[3],
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SurfaceDualSearch {
    pub solutions: Vec<ClassificationSolution>,
    /// Tuples removed by "L² = 1 iff n = 2". Only filled in `Mode::Raw`.
    pub excluded: Vec<SolutionParams>,
}

pub fn solve_surface_dual_m(cfg: &SearchConfig) -> Result<Vec<ClassificationSolution>> {
    Ok(solve_surface_dual_m_in(cfg, &Order::natural(4), Mode::Constrained)?.solutions)
}

/// Integer solutions of n = (n(a−k−1) − 1)·a·L², i.e. the genus-zero
/// equation 1 = (a − (k+1) − 1/n)·a·L² with the 1/n cleared.
pub fn solve_surface_dual_m_in(
    cfg: &SearchConfig,
    order: &Order,
    mode: Mode,
) -> Result<SurfaceDualSearch> {
    cfg.validate()?;
    let mut out = SurfaceDualSearch::default();
    for_each_point(&[cfg.n, cfg.l2, cfg.k, cfg.a], order, |p| {
        let (n, l2, k, a) = (p[0], p[1], p[2], p[3]);
        if n < 2 || l2 < 1 || a < 1 || !(0 <= k + 1 && k + 1 < a) {
            return;
        }
        if n != (n * (a - k - 1) - 1) * a * l2 {
            return;
        }
        // A surface of degree 1 is a plane, and only a plane spans P².
        if (l2 == 1) != (n == 2) {
            if mode == Mode::Raw {
                out.excluded.push(surface_params(p));
            }
            return;
        }
        let family = if (n, l2, k, a) == (2, 1, 0, 2) {
            Family::DualPlane
        } else {
            Family::Unexpected
        };
        out.solutions.push(ClassificationSolution {
            family,
            params: surface_params(p),
        });
    });
    out.solutions.sort();
    out.excluded.sort();
    Ok(out)
}

/// g_H for H = aL from g_H − 1 = a(k+1−a)L² + aL²/n, or `None` when the
/// right side is not an integer.
pub fn surface_sectional_genus(params: &SolutionParams) -> Option<i64> {
    let SolutionParams::Surface { n, l2, k, a } = *params else {
        return None;
    };
    let scaled = n * a * (k + 1 - a) * l2 + a * l2;
    (scaled % n == 0).then(|| 1 + scaled / n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Prop52Verdict {
    Holds,
    Fails,
    /// n ∤ 2·L·H: the condition cannot hold with integral H·K.
    NonIntegral,
}

/// Outcome of the H·K condition with both sides multiplied by n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop52Check {
    pub verdict: Prop52Verdict,
    pub lhs_scaled: i64,
    pub rhs_scaled: i64,
}

/// Necessary condition for H-Ulrichness on a surface:
/// dual: H·K = 2(k+1)L·H − 3H² + 2L·H/n,
/// syzygy: H·K = 2(k−1)L·H − 3H² − 2L·H/n.
pub fn check_prop52(table: &IntersectionTable, k: i64, kind: BundleKind) -> Result<Prop52Check> {
    table.validate()?;
    let n = table.n;
    let lhs_scaled = n * table.hk;
    let rhs_scaled = match kind {
        BundleKind::Dual => 2 * n * (k + 1) * table.lh - 3 * n * table.h2 + 2 * table.lh,
        BundleKind::Syzygy => 2 * n * (k - 1) * table.lh - 3 * n * table.h2 - 2 * table.lh,
    };
    let verdict = if (2 * table.lh) % n != 0 {
        Prop52Verdict::NonIntegral
    } else if lhs_scaled == rhs_scaled {
        Prop52Verdict::Holds
    } else {
        Prop52Verdict::Fails
    };
    Ok(Prop52Check {
        verdict,
        lhs_scaled,
        rhs_scaled,
    })
}

/// The same condition through the sectional genus:
/// g_H − 1 = (k ± 1)L·H − H² ± L·H/n, with g_H from adjunction.
pub fn genus_form_holds(table: &IntersectionTable, k: i64, kind: BundleKind) -> Result<bool> {
    table.validate()?;
    let n = table.n;
    let genus = crate::riemann_roch::sectional_genus(&table.numbers(0, 1))?;
    let rhs = match kind {
        BundleKind::Dual => n * (k + 1) * table.lh - n * table.h2 + table.lh,
        BundleKind::Syzygy => n * (k - 1) * table.lh - n * table.h2 - table.lh,
    };
    Ok(n * (genus - 1) == rhs)
}

/// Search box for the simultaneous-condition check. Only L·H, H², H·K
/// and n enter the two conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cor53Bounds {
    pub lh: IntRange,
    pub h2: IntRange,
    pub hk: IntRange,
    pub n: IntRange,
    pub k: IntRange,
}

impl Default for Cor53Bounds {
    fn default() -> Self {
        Cor53Bounds {
            lh: IntRange::new(1, 20),
            h2: IntRange::new(1, 20),
            hk: IntRange::new(-20, 20),
            n: IntRange::new(2, 20),
            k: IntRange::new(-20, 20),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Cor53Report {
    pub cases: u64,
    /// (L·H, H², H·K, n, k) where both conditions hold.
    pub violations: Vec<[i64; 5]>,
}

/// Checks that the dual and syzygy conditions never hold together when
/// L·H > 0, over every valid table in the box.
pub fn cor53_exhaustive(bounds: &Cor53Bounds) -> Result<Cor53Report> {
    if bounds.lh.lo < 1 || bounds.h2.lo < 1 || bounds.n.lo < 2 {
        return Err(Error::InvalidRange {
            name: "cor53".into(),
            reason: "needs L·H ≥ 1, H² ≥ 1 and n ≥ 2".into(),
        });
    }
    let lhs: Vec<i64> = bounds.lh.iter().collect();
    let parts = grid_map(&lhs, |&lh| -> Result<Cor53Report> {
        let mut part = Cor53Report::default();
        for h2 in bounds.h2.iter() {
            for hk in bounds.hk.iter().filter(|hk| (h2 + hk) % 2 == 0) {
                for n in bounds.n.iter() {
                    let table = IntersectionTable::new(1, -3, h2, lh, hk, 1, n)?;
                    for k in bounds.k.iter() {
                        part.cases += 1;
                        let dual = check_prop52(&table, k, BundleKind::Dual)?;
                        let syz = check_prop52(&table, k, BundleKind::Syzygy)?;
                        if dual.verdict == Prop52Verdict::Holds
                            && syz.verdict == Prop52Verdict::Holds
                        {
                            part.violations.push([lh, h2, hk, n, k]);
                        }
                    }
                }
            }
        }
        Ok(part)
    });
    let mut report = Cor53Report::default();
    for part in parts {
        let part = part?;
        report.cases += part.cases;
        report.violations.extend(part.violations);
    }
    Ok(report)
}

fn quadric_components(c: &BundleClass) -> Result<(i64, i64)> {
    match c {
        BundleClass::Bidegree(a, b) => Ok((*a, *b)),
        other => Err(Error::ModelMismatch {
            model: VarietyModel::QuadricSurface.to_string(),
            class: other.to_string(),
        }),
    }
}

/// On P¹×P¹: true when L^{2k} = O(3H + K), in which case the Ulrich dual of
/// M^∨⊗L^{k+1} is M⊗L^{k−1} and the bundle cannot be H-Ulrich.
pub fn check_dual_ulrich_obstruction(l: &BundleClass, h: &BundleClass, k: i64) -> Result<bool> {
    let (l1, l2) = quadric_components(l)?;
    let (h1, h2) = quadric_components(h)?;
    Ok((2 * k * l1, 2 * k * l2) == (3 * h1 - 2, 3 * h2 - 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCase {
    pub l: BundleClass,
    pub h: BundleClass,
    pub k: i64,
    /// Verdict of the direct Ulrich test; the obstruction predicts false.
    pub ulrich: bool,
}

/// Every (L, H, k) with all four components in `components` and k in `k`
/// where the obstruction applies, each checked with the exact engine.
pub fn obstruction_sweep(components: IntRange, k: IntRange) -> Result<Vec<ObstructionCase>> {
    if components.lo < 1 {
        return Err(Error::InvalidRange {
            name: "components".into(),
            reason: "L and H must be ample, components start at 1".into(),
        });
    }
    let q = VarietyModel::QuadricSurface;
    let mut cases = Vec::new();
    for (l1, l2, h1, h2) in itertools4(components) {
        for k in k.iter() {
            let (l, h) = (BundleClass::Bidegree(l1, l2), BundleClass::Bidegree(h1, h2));
            if check_dual_ulrich_obstruction(&l, &h, k)? {
                cases.push((l, h, k));
            }
        }
    }
    grid_map(&cases, |&(l, h, k)| {
        let e = BundleKind::Dual.expr(l, k);
        Ok(ObstructionCase {
            l,
            h,
            k,
            ulrich: is_ulrich(&q, &e, &h)?.verdict,
        })
    })
    .into_iter()
    .collect()
}

fn itertools4(r: IntRange) -> impl Iterator<Item = (i64, i64, i64, i64)> {
    r.iter().flat_map(move |a| {
        r.iter().flat_map(move |b| {
            r.iter()
                .flat_map(move |c| r.iter().map(move |d| (a, b, c, d)))
        })
    })
}

/// Brute-force search for L = O(1,1), H = O(a,b) on P¹×P¹ and
/// E = M⊗L^{k−1}: per-equation counts and the simultaneous solutions.
#[derive(Debug, Clone, Default, Serialize)]
pub struct P1xP1Search {
    pub points: u64,
    /// 9ab = (3k−1)(a+b)
    pub c1: u64,
    /// 6ab = (3k+1)(k−1)
    pub c2: u64,
    /// (3k−1)(a+b) = 3ab + 3k² − 2k − 4
    pub chi: u64,
    /// The same χ-condition with the constant −1 that Riemann–Roch gives
    /// for χ(L^k(−H)) = 4χ(L^{k−1}(−H)).
    pub chi_rr: u64,
    pub c1_and_c2: u64,
    pub c1_example: Option<(i64, i64, i64)>,
    /// (a, b, k) satisfying c1, c2 and the χ-condition.
    pub triple: Vec<(i64, i64, i64)>,
}

pub fn example_p1xp1_search(cfg: &SearchConfig) -> Result<P1xP1Search> {
    cfg.validate()?;
    let mut out = P1xP1Search::default();
    for_each_point(&[cfg.b1, cfg.b2, cfg.k], &Order::natural(3), |p| {
        let (a, b, k) = (p[0], p[1], p[2]);
        if a < 1 || b < 1 {
            return;
        }
        out.points += 1;
        let c1 = 9 * a * b == (3 * k - 1) * (a + b);
        let c2 = 6 * a * b == (3 * k + 1) * (k - 1);
        let lhs = (3 * k - 1) * (a + b);
        let chi = lhs == 3 * a * b + 3 * k * k - 2 * k - 4;
        let chi_rr = lhs == 3 * a * b + 3 * k * k - 2 * k - 1;
        out.c1 += c1 as u64;
        out.c2 += c2 as u64;
        out.chi += chi as u64;
        out.chi_rr += chi_rr as u64;
        out.c1_and_c2 += (c1 && c2) as u64;
        if c1 && out.c1_example.is_none() {
            out.c1_example = Some((a, b, k));
        }
        if c1 && c2 && chi {
            out.triple.push((a, b, k));
        }
    });
    Ok(out)
}

/// |D| = ∅, i.e. h⁰(D) = 0, on a concrete model.
pub fn emptiness_check(model: &VarietyModel, d: &BundleClass) -> Result<bool> {
    if !model.is_concrete() {
        return Err(Error::NoExactEngine(model.to_string()));
    }
    Ok(coh_line(model, d)?.h0() == 0)
}

/// |(k+1)L − H| = ∅, necessary for M^∨⊗L^{k+1} to be H-Ulrich when k ≥ 0.
pub fn lemma51_condition(
    model: &VarietyModel,
    l: &BundleClass,
    h: &BundleClass,
    k: i64,
) -> Result<bool> {
    emptiness_check(model, &model.tensor(&l.scale(k + 1), &h.neg())?)
}

/// |(2a+1−k)L + K| = ∅, necessary for M⊗L^{k−1} to be L^a-Ulrich on a
/// surface.
pub fn reider_condition(model: &VarietyModel, l: &BundleClass, k: i64, a: i64) -> Result<bool> {
    emptiness_check(
        model,
        &model.tensor(&l.scale(2 * a + 1 - k), &model.canonical()?)?,
    )
}
