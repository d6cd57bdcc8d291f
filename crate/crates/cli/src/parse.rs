//! Text grammar for models, classes and sheaf expressions.
//!
//! ```text
//! model  := p1 | p<n> | quadric | curve:<g> | surface
//! class  := <d>            on P¹ and Pⁿ
//!         | <a>,<b>        on P¹×P¹
//! sheaf  := line:<class> | syz:<class>:<class> | dualsyz:<class>:<class>
//!         | sum:<sheaf>+<sheaf>+...
//! ```

use ulrich_core::{BundleClass, SheafExpr, VarietyModel};

pub const SHEAF_GRAMMAR: &str =
    "line:<c> | syz:<L>:<t> | dualsyz:<L>:<t> | sum:<e1>+<e2>+... (classes: 3 on P1/Pn, 1,4 on the quadric)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

pub fn parse_model(s: &str) -> Result<VarietyModel, ParseError> {
    let s = s.trim().to_ascii_lowercase();
    match s.as_str() {
        "p1" => return Ok(VarietyModel::RationalCurve),
        "quadric" | "p1xp1" => return Ok(VarietyModel::QuadricSurface),
        "surface" => {
            return err("abstract surfaces have no exact engine; use `classify surfaces-dual` or `classify prop52-scan`")
        }
        _ => {}
    }
    if let Some(g) = s.strip_prefix("curve:") {
        let _: u32 = g.parse().map_err(|_| ParseError(format!("bad genus in model `{s}`")))?;
        return err("abstract curves have no exact engine; use `classify curves-dual` or `classify curves-syz`");
    }
    if let Some(n) = s.strip_prefix('p') {
        if let Ok(n) = n.parse::<u32>() {
            return VarietyModel::proj_space(n).map_err(|e| ParseError(e.to_string()));
        }
    }
    err(format!("unknown model `{s}`; expected p1, p<n>, quadric"))
}

pub fn parse_class(model: &VarietyModel, s: &str) -> Result<BundleClass, ParseError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Vec<i64> = parts
        .iter()
        .map(|p| p.parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| ParseError(format!("bad class `{s}`")))?;
    match (model, nums.as_slice()) {
        (VarietyModel::QuadricSurface, [a, b]) => Ok(BundleClass::Bidegree(*a, *b)),
        (VarietyModel::QuadricSurface, _) => err(format!("class `{s}` on P1xP1 needs two components a,b")),
        (_, [d]) => Ok(BundleClass::Degree(*d)),
        _ => err(format!("class `{s}` on {model} needs a single degree")),
    }
}

pub fn parse_sheaf(model: &VarietyModel, s: &str) -> Result<SheafExpr, ParseError> {
    let s = s.trim();
    let usage = || ParseError(format!("malformed sheaf `{s}`; grammar: {SHEAF_GRAMMAR}"));
    if let Some(rest) = s.strip_prefix("sum:") {
        let parts = rest
            .split('+')
            .map(|p| {
                if p.trim().starts_with("sum:") {
                    Err(usage())
                } else {
                    parse_sheaf(model, p)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parts.is_empty() {
            return Err(usage());
        }
        return Ok(SheafExpr::Sum(parts));
    }
    let fields: Vec<&str> = s.split(':').collect();
    let class = |t: &str| parse_class(model, t).map_err(|e| ParseError(format!("{e}; grammar: {SHEAF_GRAMMAR}")));
    match fields.as_slice() {
        ["line", c] => Ok(SheafExpr::line(class(c)?)),
        ["syz", l, t] => Ok(SheafExpr::syzygy(class(l)?, class(t)?)),
        ["dualsyz", l, t] => Ok(SheafExpr::dual_syzygy(class(l)?, class(t)?)),
        _ => Err(usage()),
    }
}
