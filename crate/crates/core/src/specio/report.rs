use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use crate::relations::{RelationReport, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(format!("unknown format '{s}' (json, csv)")),
        }
    }
}

/// One output row: a report, the state it was computed for, and the sweep
/// values that produced it (empty outside scans).
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub state_name: String,
    pub report: RelationReport,
    pub sweep: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SerializeError {
    #[error("no reports to serialize")]
    Empty,
    #[error("rows disagree on sweep columns")]
    InconsistentSweep,
}

/// Rounds to 12 significant digits.
fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn real(x: f64) -> Value {
    Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
}

fn complex(z: Complex64) -> Value {
    let mut m = Map::new();
    m.insert("im".into(), real(z.im));
    m.insert("re".into(), real(z.re));
    Value::Object(m)
}

fn text(x: f64) -> String {
    match real(x) {
        Value::Number(n) => n.to_string(),
        _ => "nan".into(),
    }
}

fn row_json(row: &ReportRow) -> Value {
    let r = &row.report;
    let mut obj = Map::new();
    obj.insert("state_name".into(), Value::String(row.state_name.clone()));
    obj.insert("relation".into(), Value::String(r.relation.to_string()));
    obj.insert("lhs".into(), real(r.lhs));
    obj.insert("rhs".into(), real(r.rhs));
    obj.insert("verdict".into(), Value::String(r.verdict.as_str().into()));
    obj.insert("condition31".into(), Value::Bool(r.condition31.holds));
    obj.insert("deficit".into(), complex(r.condition31.deficit));
    let diagnostics: Map<String, Value> = r
        .diagnostics
        .iter()
        .map(|(k, v)| {
            let v = match *v {
                Scalar::Real(x) => real(x),
                Scalar::Complex(z) => complex(z),
            };
            (k.clone(), v)
        })
        .collect();
    obj.insert("diagnostics".into(), Value::Object(diagnostics));
    if !row.sweep.is_empty() {
        let sweep: Map<String, Value> = row.sweep.iter().map(|(k, v)| (k.clone(), real(*v))).collect();
        obj.insert("sweep".into(), Value::Object(sweep));
    }
    Value::Object(obj)
}

/// Deterministic rendering of a non-empty list of rows.
///
/// JSON: an array of objects with sorted keys. CSV: one header line, then
/// `state_name,relation,lhs,rhs,verdict,condition31,deficit_abs` followed
/// by one column per sweep parameter.
pub fn serialize_report(rows: &[ReportRow], format: ReportFormat) -> Result<String, SerializeError> {
    let first = rows.first().ok_or(SerializeError::Empty)?;
    let sweep_names: Vec<&str> = first.sweep.iter().map(|(k, _)| k.as_str()).collect();
    if rows.iter().any(|r| r.sweep.iter().map(|(k, _)| k.as_str()).ne(sweep_names.iter().copied())) {
        return Err(SerializeError::InconsistentSweep);
    }
    match format {
        ReportFormat::Json => {
            let array = Value::Array(rows.iter().map(row_json).collect());
            let mut out = serde_json::to_string_pretty(&array).expect("plain values serialize");
            out.push('\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut out = String::from("state_name,relation,lhs,rhs,verdict,condition31,deficit_abs");
            for name in &sweep_names {
                out.push(',');
                out.push_str(name);
            }
            out.push('\n');
            for row in rows {
                let r = &row.report;
                let _ = write!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.state_name,
                    r.relation,
                    text(r.lhs),
                    text(r.rhs),
                    r.verdict,
                    r.condition31.holds,
                    text(r.condition31.deficit.norm())
                );
                for (_, v) in &row.sweep {
                    out.push(',');
                    out.push_str(&text(*v));
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}
