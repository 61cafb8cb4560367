//! JSON documents: `{"kind": ..., "format_version": 1, ...payload}`.
//!
//! Integers are accepted as JSON numbers or decimal strings and always
//! written as decimal strings, so values beyond 2^53 survive other tools.

use std::str::FromStr;

use forge_core::sasaki::JoinFactor;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::CliError;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Anticanonical,
    Values(Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSpec {
    /// `S^{2m+1}`.
    Sphere(usize),
    /// Circle bundle over the Fano surface with these rays.
    Fan(Vec<Vec<BigInt>>),
    Explicit(JoinFactor),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    WeightMatrix { rows: Vec<Vec<BigInt>> },
    AugmentedFan { dim: usize, rays: Vec<Vec<BigInt>>, support: Support },
    IsotropyData { vectors: Vec<Vec<BigInt>> },
    JoinSpec { factors: [FactorSpec; 2], weights: [BigInt; 2] },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::WeightMatrix { .. } => "weight_matrix",
            Document::AugmentedFan { .. } => "augmented_fan",
            Document::IsotropyData { .. } => "isotropy_data",
            Document::JoinSpec { .. } => "join_spec",
        }
    }
}

fn schema(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{path}: {msg}"))
}

pub fn parse(text: &str) -> Result<Document, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<Document, CliError> {
    let obj = value.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| schema("kind", "missing or not a string"))?;
    match obj.get("format_version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(schema("format_version", format!("unsupported version {v}"))),
        None => return Err(schema("format_version", "missing or not an integer")),
    }
    match kind {
        "weight_matrix" => weight_matrix(obj),
        "augmented_fan" => augmented_fan(obj),
        "isotropy_data" => {
            let vectors = int_rows(field(obj, "vectors")?, "vectors", Some(2))?;
            Ok(Document::IsotropyData { vectors })
        }
        "join_spec" => join_spec(obj),
        other => Err(schema("kind", format!("unknown kind {other:?}"))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, CliError> {
    obj.get(name).ok_or_else(|| schema(name, "missing"))
}

pub fn int(v: &Value, path: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(i.into()),
            None => n
                .as_u64()
                .map(BigInt::from)
                .ok_or_else(|| schema(path, format!("{n} is not an integer"))),
        },
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| schema(path, format!("{s:?} is not an integer"))),
        _ => Err(schema(path, "expected an integer")),
    }
}

fn small(v: &Value, path: &str) -> Result<usize, CliError> {
    int(v, path)?.to_usize().ok_or_else(|| schema(path, "expected a small non-negative integer"))
}

fn int_list(v: &Value, path: &str) -> Result<Vec<BigInt>, CliError> {
    let arr = v.as_array().ok_or_else(|| schema(path, "expected an array"))?;
    arr.iter().enumerate().map(|(i, x)| int(x, &format!("{path}[{i}]"))).collect()
}

fn int_rows(v: &Value, path: &str, width: Option<usize>) -> Result<Vec<Vec<BigInt>>, CliError> {
    let arr = v.as_array().ok_or_else(|| schema(path, "expected an array of arrays"))?;
    let rows: Vec<Vec<BigInt>> =
        arr.iter().enumerate().map(|(i, r)| int_list(r, &format!("{path}[{i}]"))).collect::<Result<_, _>>()?;
    if let Some(w) = width.or_else(|| rows.first().map(Vec::len)) {
        if let Some(i) = rows.iter().position(|r| r.len() != w) {
            return Err(schema(&format!("{path}[{i}]"), format!("expected {w} entries")));
        }
    }
    Ok(rows)
}

fn weight_matrix(obj: &Map<String, Value>) -> Result<Document, CliError> {
    if let Some(rows) = obj.get("rows") {
        return Ok(Document::WeightMatrix { rows: int_rows(rows, "rows", None)? });
    }
    // normal form [I_k | a | b]
    let a = int_list(field(obj, "a")?, "a")?;
    let b = int_list(field(obj, "b")?, "b")?;
    if a.len() != b.len() {
        return Err(schema("b", format!("expected {} entries like a", a.len())));
    }
    let k = a.len();
    let rows = (0..k)
        .map(|i| {
            let mut r = vec![BigInt::from(0); k + 2];
            r[i] = 1.into();
            r[k] = a[i].clone();
            r[k + 1] = b[i].clone();
            r
        })
        .collect();
    Ok(Document::WeightMatrix { rows })
}

fn augmented_fan(obj: &Map<String, Value>) -> Result<Document, CliError> {
    let dim = match obj.get("dim") {
        Some(d) => small(d, "dim")?,
        None => 2,
    };
    let rays = int_rows(field(obj, "rays")?, "rays", Some(dim))?;
    let support = match obj.get("support") {
        None => Support::Anticanonical,
        Some(Value::Object(s)) => match (s.get("anticanonical"), s.get("values")) {
            (Some(Value::Bool(true)), None) => Support::Anticanonical,
            (None, Some(v)) => Support::Values(int_list(v, "support.values")?),
            _ => return Err(schema("support", "expected {\"anticanonical\": true} or {\"values\": [...]}")),
        },
        Some(_) => return Err(schema("support", "expected an object")),
    };
    Ok(Document::AugmentedFan { dim, rays, support })
}

fn join_spec(obj: &Map<String, Value>) -> Result<Document, CliError> {
    let factors = field(obj, "factors")?.as_array().ok_or_else(|| schema("factors", "expected an array"))?;
    if factors.len() != 2 {
        return Err(schema("factors", format!("expected 2 factors, got {}", factors.len())));
    }
    let weights = int_list(field(obj, "weights")?, "weights")?;
    let [k1, k2]: [BigInt; 2] = weights.try_into().map_err(|_| schema("weights", "expected [k1, k2]"))?;
    Ok(Document::JoinSpec {
        factors: [factor(&factors[0], "factors[0]")?, factor(&factors[1], "factors[1]")?],
        weights: [k1, k2],
    })
}

fn factor(v: &Value, path: &str) -> Result<FactorSpec, CliError> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    if let Some(m) = obj.get("sphere") {
        return Ok(FactorSpec::Sphere(small(m, &format!("{path}.sphere"))?));
    }
    if let Some(rays) = obj.get("fan") {
        return Ok(FactorSpec::Fan(int_rows(rays, &format!("{path}.fan"), Some(2))?));
    }
    let get = |name: &str| obj.get(name).ok_or_else(|| schema(&format!("{path}.{name}"), "missing"));
    let flag = |name: &str| -> Result<bool, CliError> {
        get(name)?.as_bool().ok_or_else(|| schema(&format!("{path}.{name}"), "expected a boolean"))
    };
    let spin = match obj.get("spin") {
        None | Some(Value::Null) => None,
        Some(Value::Bool(b)) => Some(*b),
        Some(_) => return Err(schema(&format!("{path}.spin"), "expected a boolean or null")),
    };
    Ok(FactorSpec::Explicit(JoinFactor {
        m: small(get("m")?, &format!("{path}.m"))?,
        b2: small(get("b2")?, &format!("{path}.b2"))?,
        index: int(get("index")?, &format!("{path}.index"))?,
        ord: int(get("ord")?, &format!("{path}.ord"))?,
        einstein: flag("einstein")?,
        positive: flag("positive")?,
        spin,
    }))
}

pub fn int_value(i: &BigInt) -> Value {
    Value::String(i.to_string())
}

fn rows_value(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(int_value).collect())).collect())
}

pub fn to_value(doc: &Document) -> Value {
    let mut out = Map::new();
    out.insert("kind".into(), doc.kind().into());
    out.insert("format_version".into(), FORMAT_VERSION.into());
    match doc {
        Document::WeightMatrix { rows } => {
            out.insert("rows".into(), rows_value(rows));
        }
        Document::AugmentedFan { dim, rays, support } => {
            out.insert("dim".into(), (*dim).into());
            out.insert("rays".into(), rows_value(rays));
            let s = match support {
                Support::Anticanonical => json!({ "anticanonical": true }),
                Support::Values(v) => json!({ "values": v.iter().map(int_value).collect::<Vec<_>>() }),
            };
            out.insert("support".into(), s);
        }
        Document::IsotropyData { vectors } => {
            out.insert("vectors".into(), rows_value(vectors));
        }
        Document::JoinSpec { factors, weights } => {
            let f: Vec<Value> = factors.iter().map(factor_value).collect();
            out.insert("factors".into(), Value::Array(f));
            out.insert("weights".into(), Value::Array(weights.iter().map(int_value).collect()));
        }
    }
    Value::Object(out)
}

fn factor_value(f: &FactorSpec) -> Value {
    match f {
        FactorSpec::Sphere(m) => json!({ "sphere": m }),
        FactorSpec::Fan(rays) => json!({ "fan": rows_value(rays) }),
        FactorSpec::Explicit(j) => json!({
            "m": j.m,
            "b2": j.b2,
            "index": int_value(&j.index),
            "ord": int_value(&j.ord),
            "einstein": j.einstein,
            "positive": j.positive,
            "spin": j.spin,
        }),
    }
}

pub fn to_string(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("plain JSON values");
    s.push('\n');
    s
}
