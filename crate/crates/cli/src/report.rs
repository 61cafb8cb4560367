use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::doc::{int_value, FORMAT_VERSION};

/// Ordered key/value report, printed as `key=value` lines or as JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    kind: String,
    entries: Vec<(String, Value)>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(kind: &str) -> Self {
        Report { kind: format!("{kind}_report"), entries: Vec::new(), warnings: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn push_int(&mut self, key: &str, value: &BigInt) {
        self.push(key, int_value(value));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// `key=value` lines; strings are printed bare, lists comma-separated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(&text(v));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), self.kind.clone().into());
        obj.insert("format_version".into(), FORMAT_VERSION.into());
        for (k, v) in &self.entries {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text).collect::<Vec<_>>().join(","),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Fixed float formatting: 12 decimals with trailing zeros trimmed, and
/// anything below `1e-12` in magnitude printed as `0`.
pub fn float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// A finished command: its report and the exit status to use.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub status: i32,
    /// Reason for a nonzero status, printed to stderr.
    pub message: Option<String>,
}

impl Outcome {
    pub fn ok(report: Report) -> Self {
        Outcome { report, status: 0, message: None }
    }

    pub fn failed(report: Report, status: i32, message: String) -> Self {
        Outcome { report, status, message: Some(message) }
    }
}
