//! Closed-form cohomology of twisted differential forms on Pⁿ (Bott's
//! formula). With L = O(1) the syzygy bundles are M(t) = Ω¹(t + 1) and
//! M^∨(t) = TPⁿ(t − 1) = Ωⁿ⁻¹(t + n), so this gives a fast path that must
//! agree with the long-exact-sequence engine.

use super::binomial;
use crate::model::{BundleClass, CohomologyVector, SheafExpr, VarietyModel};

/// h^q(Pⁿ, Ω^p(k)).
pub fn bott(n: u32, p: u32, q: u32, k: i64) -> u64 {
    let (n, p, q) = (n as i64, p as i64, q as i64);
    if p < 0 || p > n || q < 0 || q > n {
        return 0;
    }
    if q == 0 && k > p {
        return binomial(k + n - p, k) * binomial(k - 1, p);
    }
    if k == 0 && q == p {
        return 1;
    }
    if q == n && k < p - n {
        return binomial(-k + p, -k) * binomial(-k - 1, n - p);
    }
    0
}

pub fn forms(n: u32, p: u32, k: i64) -> CohomologyVector {
    CohomologyVector::new((0..=n).map(|q| bott(n, p, q, k)).collect())
}

/// Cohomology of Ω¹(k) on Pⁿ.
pub fn cotangent_twist(n: u32, k: i64) -> CohomologyVector {
    forms(n, 1, k)
}

/// Cohomology of TPⁿ(k) = Ωⁿ⁻¹(k + n + 1).
pub fn tangent_twist(n: u32, k: i64) -> CohomologyVector {
    forms(n, n - 1, k + n as i64 + 1)
}

/// Closed-form cohomology for syzygy twists of O(1) on Pⁿ (and for line
/// bundles). `None` where no closed form applies.
pub fn coh_fast(model: &VarietyModel, e: &SheafExpr) -> Option<CohomologyVector> {
    let n = match model {
        VarietyModel::ProjSpace(n) => *n,
        VarietyModel::RationalCurve => 1,
        _ => return None,
    };
    match e {
        SheafExpr::Line(BundleClass::Degree(t)) => Some(forms(n, 0, *t)),
        SheafExpr::Syzygy {
            line: BundleClass::Degree(1),
            twist: BundleClass::Degree(t),
        } => Some(cotangent_twist(n, t + 1)),
        SheafExpr::DualSyzygy {
            line: BundleClass::Degree(1),
            twist: BundleClass::Degree(t),
        } => Some(tangent_twist(n, t - 1)),
        _ => None,
    }
}
