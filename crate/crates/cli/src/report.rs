//! Run manifests: deterministic JSON and a markdown view derived from it.

use serde_json::{json, Map, Value};

pub const TOOL: &str = "ulrich";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut checks = self.checks.clone();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        let checks: Vec<Value> = checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        canonical(&json!({
            "manifest": {
                "command": self.command,
                "config": self.config,
                "tool": TOOL,
                "version": VERSION,
            },
            "results": self.results,
            "summary": {
                "checks": checks,
                "failed": failed,
                "passed": self.passed(),
            },
        }))
    }
}

/// Rebuilds every object with its keys in sorted order.
pub fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v)).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.replace('|', "\\|")),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

/// Columns of an array of flat objects, or `None` if it is not table-like.
fn table_columns(rows: &[Value]) -> Option<Vec<String>> {
    let first = rows.first()?.as_object()?;
    let cols: Vec<String> = first.keys().cloned().collect();
    let flat = rows.iter().all(|r| {
        r.as_object().is_some_and(|o| {
            o.len() == cols.len() && cols.iter().all(|c| o.get(c).and_then(scalar).is_some())
        })
    });
    flat.then_some(cols)
}

fn render_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("- **{key}**: {s}\n"));
        return;
    }
    let heading = "#".repeat((depth + 2).min(6));
    match v {
        Value::Array(rows) => {
            out.push_str(&format!("\n{heading} {key}\n\n"));
            if let Some(cols) = table_columns(rows) {
                out.push_str(&format!("| {} |\n", cols.join(" | ")));
                out.push_str(&format!("|{}\n", "---|".repeat(cols.len())));
                for r in rows {
                    let cells: Vec<String> = cols.iter().map(|c| scalar(&r[c]).unwrap_or_default()).collect();
                    out.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
            } else {
                for (i, r) in rows.iter().enumerate() {
                    render_value(out, &format!("{key}[{i}]"), r, depth + 1);
                }
            }
            out.push('\n');
        }
        Value::Object(m) => {
            out.push_str(&format!("\n{heading} {key}\n\n"));
            for (k, x) in m {
                render_value(out, k, x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Markdown view of a report. Depends only on the JSON.
pub fn render_markdown(report: &Value) -> String {
    let report = canonical(report);
    let mut out = String::new();
    let command = report["manifest"]["command"].as_str().unwrap_or("?");
    let passed = report["summary"]["passed"].as_bool().unwrap_or(false);
    out.push_str(&format!("# {TOOL} {command}\n\n"));
    out.push_str(&format!(
        "**Status:** {}  \n**Version:** {}\n\n",
        if passed { "PASS" } else { "FAIL" },
        report["manifest"]["version"].as_str().unwrap_or("?")
    ));
    out.push_str("## Checks\n\n| check | result | detail |\n|---|---|---|\n");
    for c in report["summary"]["checks"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            c["name"].as_str().unwrap_or(""),
            if c["passed"].as_bool() == Some(true) { "pass" } else { "FAIL" },
            scalar(&c["detail"]).unwrap_or_default()
        ));
    }
    if let Some(results) = report["results"].as_object() {
        out.push_str("\n## Results\n\n");
        for (k, v) in results {
            render_value(&mut out, k, v, 1);
        }
    }
    if let Some(config) = report["manifest"]["config"].as_object() {
        out.push_str("\n## Configuration\n\n");
        for (k, v) in config {
            render_value(&mut out, k, v, 1);
        }
    }
    out
}
