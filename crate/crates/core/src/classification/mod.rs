//! Exhaustive integer solvers for the numerical conditions behind the
//! classification, and the checks for arbitrary polarizations on surfaces.

mod curves;
mod surfaces;

pub use curves::{
    realize_on_p1, solve_curve_dual_m, solve_curve_dual_m_in, solve_curve_m, solve_curve_m_in,
    CurveDualSearch, CurveSyzygySearch,
};
pub use surfaces::{
    check_dual_ulrich_obstruction, check_prop52, cor53_exhaustive, emptiness_check,
    example_p1xp1_search, genus_form_holds, lemma51_condition, obstruction_sweep, reider_condition,
    solve_surface_dual_m, solve_surface_dual_m_in, surface_sectional_genus, Cor53Bounds,
    Cor53Report, ObstructionCase, P1xP1Search, Prop52Check, Prop52Verdict, SurfaceDualSearch,
};

use crate::model::IntRange;

/// Whether the solvers apply the geometric model constraints the
/// classification relies on, or report every raw integer tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Constrained,
    Raw,
}

/// Iteration order over a product grid: axes are visited in `perm` order
/// (outermost first), each ascending or, with `reverse`, descending.
/// Solvers are exhaustive, so the order never changes their sorted output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    pub perm: Vec<usize>,
    pub reverse: bool,
}

impl Order {
    pub fn natural(axes: usize) -> Self {
        Order {
            perm: (0..axes).collect(),
            reverse: false,
        }
    }
}

/// Calls `f` on every point of the product of `ranges`, reported in
/// canonical axis order regardless of the iteration order.
pub(crate) fn for_each_point(ranges: &[IntRange], order: &Order, mut f: impl FnMut(&[i64])) {
    let axes = ranges.len();
    assert_eq!(order.perm.len(), axes, "order must permute every axis");
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let start = |r: &IntRange| if order.reverse { r.hi } else { r.lo };
    let mut point: Vec<i64> = ranges.iter().map(start).collect();
    loop {
        f(&point);
        // odometer: the last axis in `perm` turns fastest
        let mut pos = axes;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            let axis = order.perm[pos];
            let r = &ranges[axis];
            let done = if order.reverse {
                point[axis] == r.lo
            } else {
                point[axis] == r.hi
            };
            if done {
                point[axis] = start(r);
            } else {
                point[axis] += if order.reverse { -1 } else { 1 };
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_visits_every_point_once() {
        let ranges = [
            IntRange::new(0, 2),
            IntRange::new(-1, 0),
            IntRange::new(5, 5),
        ];
        let mut seen = Vec::new();
        for_each_point(
            &ranges,
            &Order {
                perm: vec![2, 0, 1],
                reverse: true,
            },
            |p| seen.push(p.to_vec()),
        );
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![2, 0, 5]);
        assert_eq!(seen[1], vec![2, -1, 5]);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn empty_axis_visits_nothing() {
        let mut count = 0;
        for_each_point(
            &[IntRange::new(1, 0), IntRange::new(0, 3)],
            &Order::natural(2),
            |_| count += 1,
        );
        assert_eq!(count, 0);
    }
}
