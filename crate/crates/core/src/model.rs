//! Shared data model: varieties, line-bundle classes, sheaf expressions,
//! cohomology vectors and the structured verdicts emitted by the checkers
//! and solvers.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The space a computation runs on.
///
/// The three concrete models (P¹, Pⁿ, P¹×P¹) carry an exact cohomology
/// engine. The abstract models only carry numerical invariants and are
/// consumed by the classification solvers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum VarietyModel {
    RationalCurve,
    ProjSpace(u32),
    QuadricSurface,
    AbstractCurve { genus: u32 },
    AbstractSurface(IntersectionTable),
}

/// A line-bundle class.
///
/// `Degree` lives on P¹, Pⁿ and abstract curves, `Bidegree(a, b)` is the
/// class aC₁ + bC₂ on P¹×P¹, and `Combo { l, h }` is lL + hH on an abstract
/// surface, known only through its intersection table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BundleClass {
    Degree(i64),
    Bidegree(i64, i64),
    Combo { l: i64, h: i64 },
}

/// Intersection numbers of a polarized surface carrying a very ample L and
/// a polarization H. `n` is dim V − 1 for the embedding subspace V of L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionTable {
    pub l2: i64,
    pub lk: i64,
    pub h2: i64,
    pub lh: i64,
    pub hk: i64,
    pub chi_o: i64,
    pub n: i64,
}

/// Symbolic sheaf. `Syzygy { line, twist }` is M_{L,V} ⊗ O(twist) and
/// `DualSyzygy` is M^∨_{L,V} ⊗ O(twist), with V = H⁰(L) the complete
/// linear system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum SheafExpr {
    Line(BundleClass),
    Syzygy {
        line: BundleClass,
        twist: BundleClass,
    },
    DualSyzygy {
        line: BundleClass,
        twist: BundleClass,
    },
    Sum(Vec<SheafExpr>),
}

/// Exact cohomology dimensions (h⁰, …, h^d).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CohomologyVector {
    pub dims: Vec<u64>,
}

impl VarietyModel {
    pub fn proj_space(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("P^0 is a point".into()));
        }
        Ok(VarietyModel::ProjSpace(n))
    }

    pub fn abstract_surface(table: IntersectionTable) -> Result<Self> {
        table.validate()?;
        Ok(VarietyModel::AbstractSurface(table))
    }

    pub fn dim(&self) -> usize {
        match self {
            VarietyModel::RationalCurve | VarietyModel::AbstractCurve { .. } => 1,
            VarietyModel::ProjSpace(n) => *n as usize,
            VarietyModel::QuadricSurface | VarietyModel::AbstractSurface(_) => 2,
        }
    }

    pub fn is_concrete(&self) -> bool {
        matches!(
            self,
            VarietyModel::RationalCurve | VarietyModel::ProjSpace(_) | VarietyModel::QuadricSurface
        )
    }

    /// Dimensions of the projective-space factors of a concrete model.
    pub(crate) fn factor_dims(&self) -> Result<Vec<usize>> {
        match self {
            VarietyModel::RationalCurve => Ok(vec![1]),
            VarietyModel::ProjSpace(n) => Ok(vec![*n as usize]),
            VarietyModel::QuadricSurface => Ok(vec![1, 1]),
            _ => Err(Error::NoExactEngine(self.to_string())),
        }
    }

    /// Per-factor degrees of a class on a concrete model.
    pub(crate) fn factor_degrees(&self, c: &BundleClass) -> Result<Vec<i64>> {
        self.check(c)?;
        match c {
            BundleClass::Degree(d) => Ok(vec![*d]),
            BundleClass::Bidegree(a, b) => Ok(vec![*a, *b]),
            BundleClass::Combo { .. } => Err(Error::NoExactEngine(self.to_string())),
        }
    }

    pub fn accepts(&self, c: &BundleClass) -> bool {
        matches!(
            (self, c),
            (
                VarietyModel::RationalCurve
                    | VarietyModel::ProjSpace(_)
                    | VarietyModel::AbstractCurve { .. },
                BundleClass::Degree(_)
            ) | (VarietyModel::QuadricSurface, BundleClass::Bidegree(..))
                | (VarietyModel::AbstractSurface(_), BundleClass::Combo { .. })
        )
    }

    pub fn check(&self, c: &BundleClass) -> Result<()> {
        if self.accepts(c) {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                model: self.to_string(),
                class: c.to_string(),
            })
        }
    }

    pub fn zero_class(&self) -> BundleClass {
        match self {
            VarietyModel::QuadricSurface => BundleClass::Bidegree(0, 0),
            VarietyModel::AbstractSurface(_) => BundleClass::Combo { l: 0, h: 0 },
            _ => BundleClass::Degree(0),
        }
    }

    /// The canonical class on a concrete model.
    pub fn canonical(&self) -> Result<BundleClass> {
        match self {
            VarietyModel::RationalCurve => Ok(BundleClass::Degree(-2)),
            VarietyModel::ProjSpace(n) => Ok(BundleClass::Degree(-(*n as i64) - 1)),
            VarietyModel::QuadricSurface => Ok(BundleClass::Bidegree(-2, -2)),
            _ => Err(Error::NoExactEngine(self.to_string())),
        }
    }

    /// Tensor product of line bundles, i.e. addition of classes.
    pub fn tensor(&self, c1: &BundleClass, c2: &BundleClass) -> Result<BundleClass> {
        self.check(c1)?;
        self.check(c2)?;
        Ok(c1.plus(c2))
    }

    /// Very ampleness on the concrete models: every component at least 1.
    pub fn very_ample(&self, c: &BundleClass) -> Result<bool> {
        if !self.is_concrete() {
            return Err(Error::Undecidable(self.to_string()));
        }
        self.check(c)?;
        Ok(match c {
            BundleClass::Degree(d) => *d >= 1,
            BundleClass::Bidegree(a, b) => *a >= 1 && *b >= 1,
            BundleClass::Combo { .. } => unreachable!(),
        })
    }

    pub(crate) fn require_very_ample(&self, c: &BundleClass) -> Result<()> {
        if self.very_ample(c)? {
            Ok(())
        } else {
            Err(Error::NotVeryAmple(c.to_string(), self.to_string()))
        }
    }
}

impl fmt::Display for VarietyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyModel::RationalCurve => write!(f, "P1"),
            VarietyModel::ProjSpace(n) => write!(f, "P{n}"),
            VarietyModel::QuadricSurface => write!(f, "P1xP1"),
            VarietyModel::AbstractCurve { genus } => write!(f, "curve(g={genus})"),
            VarietyModel::AbstractSurface(_) => write!(f, "surface(table)"),
        }
    }
}

impl BundleClass {
    /// Componentwise sum. Callers check that both classes share a model.
    pub(crate) fn plus(&self, other: &BundleClass) -> BundleClass {
        match (self, other) {
            (BundleClass::Degree(a), BundleClass::Degree(b)) => BundleClass::Degree(a + b),
            (BundleClass::Bidegree(a, b), BundleClass::Bidegree(c, d)) => {
                BundleClass::Bidegree(a + c, b + d)
            }
            (BundleClass::Combo { l: a, h: b }, BundleClass::Combo { l: c, h: d }) => {
                BundleClass::Combo { l: a + c, h: b + d }
            }
            _ => panic!("adding classes of different kinds: {self} and {other}"),
        }
    }

    pub fn scale(&self, t: i64) -> BundleClass {
        match *self {
            BundleClass::Degree(a) => BundleClass::Degree(t * a),
            BundleClass::Bidegree(a, b) => BundleClass::Bidegree(t * a, t * b),
            BundleClass::Combo { l, h } => BundleClass::Combo { l: t * l, h: t * h },
        }
    }

    pub fn neg(&self) -> BundleClass {
        self.scale(-1)
    }

    /// Components as a flat list, in model order.
    pub fn components(&self) -> Vec<i64> {
        match *self {
            BundleClass::Degree(a) => vec![a],
            BundleClass::Bidegree(a, b) => vec![a, b],
            BundleClass::Combo { l, h } => vec![l, h],
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleClass::Degree(d) => write!(f, "{d}"),
            BundleClass::Bidegree(a, b) => write!(f, "{a},{b}"),
            BundleClass::Combo { l, h } => write!(f, "{l}L+{h}H"),
        }
    }
}

impl IntersectionTable {
    pub fn new(l2: i64, lk: i64, h2: i64, lh: i64, hk: i64, chi_o: i64, n: i64) -> Result<Self> {
        let t = IntersectionTable {
            l2,
            lk,
            h2,
            lh,
            hk,
            chi_o,
            n,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidTable(s.to_string()));
        if self.l2 <= 0 || self.h2 <= 0 || self.lh <= 0 {
            return bad("L², H² and L·H must be positive for ample L, H");
        }
        if (self.h2 + self.hk).rem_euclid(2) != 0 {
            return bad("H² + H·K must be even");
        }
        if (self.l2 + self.lk).rem_euclid(2) != 0 {
            return bad("L² + L·K must be even");
        }
        if self.n < 2 {
            return bad("a non-degenerate surface needs n ≥ 2");
        }
        Ok(())
    }

    /// Table of a concrete surface model for the pair (L, H).
    pub fn concrete(model: &VarietyModel, l: &BundleClass, h: &BundleClass) -> Result<Self> {
        model.require_very_ample(l)?;
        model.require_very_ample(h)?;
        let k = model.canonical()?;
        let dot = |x: &BundleClass, y: &BundleClass| -> Result<i64> { intersect(model, x, y) };
        let n = crate::riemann_roch::chi_line(model, l)? - 1;
        IntersectionTable::new(
            dot(l, l)?,
            dot(l, &k)?,
            dot(h, h)?,
            dot(l, h)?,
            dot(h, &k)?,
            1,
            n,
        )
    }

    /// D² and D·K for D = lL + hH.
    pub fn numbers(&self, l: i64, h: i64) -> DivisorNumbers {
        DivisorNumbers {
            square: l * l * self.l2 + 2 * l * h * self.lh + h * h * self.h2,
            dot_canonical: l * self.lk + h * self.hk,
        }
    }
}

/// Intersection product of two classes on a concrete surface model.
pub fn intersect(model: &VarietyModel, x: &BundleClass, y: &BundleClass) -> Result<i64> {
    model.check(x)?;
    model.check(y)?;
    match (model, x, y) {
        (VarietyModel::ProjSpace(2), BundleClass::Degree(a), BundleClass::Degree(b)) => Ok(a * b),
        (
            VarietyModel::QuadricSurface,
            BundleClass::Bidegree(a, b),
            BundleClass::Bidegree(c, d),
        ) => Ok(a * d + b * c),
        _ => Err(Error::InvalidModel(format!(
            "intersection pairing needs a concrete surface, got {model}"
        ))),
    }
}

/// Self-intersection and canonical degree of a divisor on a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorNumbers {
    pub square: i64,
    pub dot_canonical: i64,
}

impl SheafExpr {
    pub fn line(c: BundleClass) -> Self {
        SheafExpr::Line(c)
    }

    pub fn syzygy(line: BundleClass, twist: BundleClass) -> Self {
        SheafExpr::Syzygy { line, twist }
    }

    pub fn dual_syzygy(line: BundleClass, twist: BundleClass) -> Self {
        SheafExpr::DualSyzygy { line, twist }
    }

    /// E ⊗ O(by).
    pub fn twist(&self, model: &VarietyModel, by: &BundleClass) -> Result<SheafExpr> {
        Ok(match self {
            SheafExpr::Line(c) => SheafExpr::Line(model.tensor(c, by)?),
            SheafExpr::Syzygy { line, twist } => SheafExpr::Syzygy {
                line: *line,
                twist: model.tensor(twist, by)?,
            },
            SheafExpr::DualSyzygy { line, twist } => SheafExpr::DualSyzygy {
                line: *line,
                twist: model.tensor(twist, by)?,
            },
            SheafExpr::Sum(parts) => SheafExpr::Sum(
                parts
                    .iter()
                    .map(|p| p.twist(model, by))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    /// Checks that every class lives on `model` and every syzygy line is
    /// very ample.
    pub fn validate(&self, model: &VarietyModel) -> Result<()> {
        match self {
            SheafExpr::Line(c) => model.check(c),
            SheafExpr::Syzygy { line, twist } | SheafExpr::DualSyzygy { line, twist } => {
                model.check(twist)?;
                model.require_very_ample(line)
            }
            SheafExpr::Sum(parts) => parts.iter().try_for_each(|p| p.validate(model)),
        }
    }

    /// Rank on a concrete model: 1 for a line bundle, h⁰(L) − 1 for the
    /// syzygy bundles, additive on sums.
    pub fn rank(&self, model: &VarietyModel) -> Result<u64> {
        match self {
            SheafExpr::Line(c) => {
                model.check(c)?;
                Ok(1)
            }
            SheafExpr::Syzygy { line, twist } | SheafExpr::DualSyzygy { line, twist } => {
                model.check(twist)?;
                model.require_very_ample(line)?;
                Ok(crate::cohomology::coh_line(model, line)?.dims[0] - 1)
            }
            SheafExpr::Sum(parts) => parts.iter().map(|p| p.rank(model)).sum(),
        }
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafExpr::Line(c) => write!(f, "line:{c}"),
            SheafExpr::Syzygy { line, twist } => write!(f, "syz:{line}:{twist}"),
            SheafExpr::DualSyzygy { line, twist } => write!(f, "dualsyz:{line}:{twist}"),
            SheafExpr::Sum(parts) => {
                write!(f, "sum:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl CohomologyVector {
    pub fn new(dims: Vec<u64>) -> Self {
        CohomologyVector { dims }
    }

    pub fn zero(dim: usize) -> Self {
        CohomologyVector {
            dims: vec![0; dim + 1],
        }
    }

    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&h| h == 0)
    }

    pub fn h0(&self) -> u64 {
        self.dims[0]
    }

    pub(crate) fn add_assign(&mut self, other: &CohomologyVector) {
        for (a, b) in self.dims.iter_mut().zip(&other.dims) {
            *a += b;
        }
    }
}

impl fmt::Display for CohomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")")
    }
}

/// Inclusive integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

/// Largest span accepted for a single search range.
pub const MAX_RANGE_SPAN: i64 = 1_000_000;

impl IntRange {
    pub const fn new(lo: i64, hi: i64) -> Self {
        IntRange { lo, hi }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(&self) -> usize {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    /// Stretches the interval about its midpoint by `factor`.
    pub fn widened(&self, factor: i64) -> IntRange {
        let span = self.hi - self.lo;
        let extra = span * (factor - 1);
        IntRange::new(self.lo - extra / 2, self.hi + extra - extra / 2)
    }

    fn validate(&self, name: &str) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidRange {
                name: name.to_string(),
                reason: reason.to_string(),
            })
        };
        if self.lo > self.hi {
            return bad("lower bound exceeds upper bound");
        }
        if self.hi - self.lo > MAX_RANGE_SPAN {
            return bad("range is effectively unbounded");
        }
        Ok(())
    }
}

/// Search ranges for the classification solvers. Each solver reads only
/// the ranges it needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub k: IntRange,
    pub a: IntRange,
    pub n: IntRange,
    pub m: IntRange,
    pub g: IntRange,
    pub l2: IntRange,
    pub b1: IntRange,
    pub b2: IntRange,
}

impl SearchConfig {
    /// Ranges for the curve solvers.
    pub fn curves() -> Self {
        SearchConfig {
            k: IntRange::new(-5, 8),
            a: IntRange::new(1, 12),
            n: IntRange::new(1, 15),
            m: IntRange::new(1, 30),
            g: IntRange::new(0, 15),
            l2: IntRange::new(1, 30),
            b1: IntRange::new(1, 50),
            b2: IntRange::new(1, 50),
        }
    }

    /// Ranges for the surface solver.
    pub fn surfaces() -> Self {
        SearchConfig {
            k: IntRange::new(-3, 6),
            a: IntRange::new(1, 10),
            n: IntRange::new(2, 20),
            ..Self::curves()
        }
    }

    /// Ranges for the P¹×P¹ example search: (a, b) is the bidegree of H.
    pub fn p1xp1() -> Self {
        SearchConfig {
            k: IntRange::new(-20, 20),
            b1: IntRange::new(1, 50),
            b2: IntRange::new(1, 50),
            ..Self::curves()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in self.named() {
            r.validate(name)?;
        }
        if self.a.lo < 1 {
            return Err(Error::InvalidRange {
                name: "a".into(),
                reason: "polarization exponent must be positive".into(),
            });
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, &IntRange); 8] {
        [
            ("k", &self.k),
            ("a", &self.a),
            ("n", &self.n),
            ("m", &self.m),
            ("g", &self.g),
            ("l2", &self.l2),
            ("b1", &self.b1),
            ("b2", &self.b2),
        ]
    }

    pub fn named_mut(&mut self) -> [(&'static str, &mut IntRange); 8] {
        [
            ("k", &mut self.k),
            ("a", &mut self.a),
            ("n", &mut self.n),
            ("m", &mut self.m),
            ("g", &mut self.g),
            ("l2", &mut self.l2),
            ("b1", &mut self.b1),
            ("b2", &mut self.b2),
        ]
    }

    /// All ranges widened by `factor`. Ranges with a natural lower bound
    /// keep it and grow upwards to the full widened span instead.
    pub fn widened(&self, factor: i64) -> Self {
        let mut out = self.clone();
        let n_lo = self.n.lo;
        for (name, r) in out.named_mut() {
            let floor = match name {
                "a" | "m" | "l2" | "b1" | "b2" => Some(1),
                "n" => Some(n_lo),
                "g" => Some(0),
                _ => None,
            };
            let w = r.widened(factor);
            *r = match floor {
                Some(f) if w.lo < f => {
                    let lo = r.lo.max(f);
                    IntRange::new(lo, lo + (w.hi - w.lo))
                }
                _ => w,
            };
        }
        out
    }
}

/// One row of an Ulrich table: the cohomology of E(−pH).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistRow {
    pub p: i64,
    pub dims: CohomologyVector,
}

/// Verdict of the direct Ulrich test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UlrichReport {
    pub verdict: bool,
    pub table: Vec<TwistRow>,
    pub h0: u64,
    pub rank: u64,
    pub degree: u64,
    pub rank_times_degree: u64,
    /// h^i(E(−jH)) for 1 ≤ j ≤ d − 1, recorded for the h⁰ = r·deg check.
    pub intermediate: Vec<TwistRow>,
    pub notes: Vec<String>,
}

/// Families in the classification of Ulrich twisted syzygy bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Dual: X = P¹, L = O(2), a = k + 2.
    DualConic,
    /// Dual: X = P¹, L = O(1), a = k + 3.
    DualLine,
    /// Dual: X = P², L = O(1), k = 0, a = 2 (the tangent bundle).
    DualPlane,
    /// Syzygy: normal rational curve, a = k − 1.
    SyzygyRationalNormal,
    Unexpected,
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::DualConic => "i.1-conic",
            Family::DualLine => "i.2-line",
            Family::DualPlane => "i.3-plane",
            Family::SyzygyRationalNormal => "ii-normal-rational-curve",
            Family::Unexpected => "unexpected",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Parameters of a solution tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SolutionParams {
    Curve {
        n: i64,
        m: i64,
        g: i64,
        k: i64,
        a: i64,
    },
    Surface {
        n: i64,
        l2: i64,
        k: i64,
        a: i64,
    },
}

impl SolutionParams {
    pub fn as_vec(&self) -> Vec<i64> {
        match *self {
            SolutionParams::Curve { n, m, g, k, a } => vec![n, m, g, k, a],
            SolutionParams::Surface { n, l2, k, a } => vec![n, l2, k, a],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassificationSolution {
    pub family: Family,
    pub params: SolutionParams,
}
