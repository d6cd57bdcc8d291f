//! Ulrich twisted syzygy bundles: an exact cohomology engine on P¹, Pⁿ and
//! P¹×P¹, a direct Ulrich checker, Riemann–Roch utilities and the integer
//! solvers behind the classification on curves and surfaces.

pub mod classification;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod model;
pub mod riemann_roch;
pub mod ulrich;

use rayon::prelude::*;

pub use error::{Error, Result};
pub use model::{
    intersect, BundleClass, ClassificationSolution, CohomologyVector, DivisorNumbers, Family,
    IntRange, IntersectionTable, SearchConfig, SheafExpr, SolutionParams, TwistRow, UlrichReport,
    VarietyModel,
};

/// Environment variable that forces sweeps to run on a single thread.
pub const SERIAL_ENV: &str = "ULRICH_SERIAL";

pub fn serial_requested() -> bool {
    std::env::var(SERIAL_ENV).is_ok_and(|v| v == "1")
}

/// Maps `f` over `items`, in parallel unless serial mode is requested.
/// Output order always matches input order.
pub(crate) fn grid_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if serial_requested() {
        items.iter().map(f).collect()
    } else {
        items.par_iter().map(f).collect()
    }
}
