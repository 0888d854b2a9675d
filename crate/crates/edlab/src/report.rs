//! JSON plumbing for the command line: stable report envelopes and input
//! parsing. Exact rationals cross this boundary as `"p/q"` strings; where a
//! computation demands exactness, non-integer JSON numbers are rejected
//! rather than silently rounded.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactmath::{format_rat, parse_rat, rat_int, BigRational, SymMat};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {err}")]
    Read { path: String, err: String },
    #[error("invalid JSON in {path}: {err}")]
    Json { path: String, err: String },
    #[error("{0}")]
    Shape(String),
    #[error("exact input required: {0} (use integers or \"p/q\" strings)")]
    NotExact(String),
}

/// FNV-1a 64-bit digest, printed as hex. Stable across runs and platforms.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Wraps a payload into the standard envelope. Field order is fixed so that
/// identical invocations emit identical bytes.
pub fn envelope(inputs_digest: &str, seed: u64, payload: Value) -> Value {
    let mut m = Map::new();
    m.insert(
        "tool_version".into(),
        Value::String(env!("CARGO_PKG_VERSION").into()),
    );
    m.insert("inputs_digest".into(), Value::String(inputs_digest.into()));
    m.insert("seed".into(), json!(seed));
    m.insert("result".into(), payload);
    Value::Object(m)
}

pub fn read_json(path: &str) -> Result<Value, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.into(),
        err: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Json {
        path: path.into(),
        err: e.to_string(),
    })
}

/// Pulls a matrix out of a value that is either a bare `[[...]]` array or an
/// object carrying the matrix under `key`.
pub fn matrix_value<'v>(v: &'v Value, key: &str) -> Result<&'v Value, IoError> {
    match v {
        Value::Array(_) => Ok(v),
        Value::Object(m) => m
            .get(key)
            .ok_or_else(|| IoError::Shape(format!("object input must carry a {key:?} field"))),
        _ => Err(IoError::Shape("matrix input must be an array or object".into())),
    }
}

pub fn parse_f64_matrix(v: &Value) -> Result<Vec<Vec<f64>>, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Shape("expected an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let cells = r
            .as_array()
            .ok_or_else(|| IoError::Shape("expected an array of rows".into()))?;
        let mut row = Vec::with_capacity(cells.len());
        for c in cells {
            let x = c
                .as_f64()
                .ok_or_else(|| IoError::Shape(format!("non-numeric entry {c}")))?;
            row.push(x);
        }
        out.push(row);
    }
    Ok(out)
}

fn parse_exact_entry(v: &Value) -> Result<BigRational, IoError> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| IoError::NotExact(e.to_string())),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(i))
            } else if let Some(f) = n.as_f64() {
                if f.fract() == 0.0 && f.abs() < 9e15 {
                    Ok(rat_int(f as i64))
                } else {
                    Err(IoError::NotExact(format!("non-integer float {f}")))
                }
            } else {
                Err(IoError::NotExact(format!("unsupported number {n}")))
            }
        }
        other => Err(IoError::NotExact(format!("unsupported entry {other}"))),
    }
}

pub fn parse_exact_vector(v: &Value) -> Result<Vec<BigRational>, IoError> {
    let cells = v
        .as_array()
        .ok_or_else(|| IoError::Shape("expected an array".into()))?;
    cells.iter().map(parse_exact_entry).collect()
}

pub fn parse_exact_symmat(v: &Value) -> Result<SymMat, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Shape("expected an array of rows".into()))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for r in rows {
        parsed.push(parse_exact_vector(r)?);
    }
    SymMat::from_rows_exact(&parsed).map_err(|e| IoError::Shape(e.to_string()))
}

/// Exact when every entry is an integer or string, numeric otherwise.
pub fn parse_symmat_auto(v: &Value) -> Result<SymMat, IoError> {
    if let Ok(m) = parse_exact_symmat(v) {
        return Ok(m);
    }
    let rows = parse_f64_matrix(v)?;
    SymMat::from_rows_numeric(&rows).map_err(|e| IoError::Shape(e.to_string()))
}

pub fn rat_vec_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(format_rat(r))).collect())
}

pub fn bigint_vec_json(v: &[num_bigint::BigInt]) -> Value {
    Value::Array(v.iter().map(|b| Value::String(b.to_string())).collect())
}

pub fn f64_checked(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Canonical byte string of a JSON value for digesting (serde_json keeps
/// object insertion order, and our readers parse files verbatim).
pub fn canonical_bytes(v: &Value) -> Vec<u8> {
    serde_json::to_vec(v).unwrap_or_default()
}

pub fn to_f64_lossy(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
