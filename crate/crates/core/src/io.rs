//! JSON file formats for graphs and configurations.
//!
//! Graphs are either `{"family": "D~", "rank": 4}` or
//! `{"cartan": [[2, "-1/2"], ...], "coxeter": {"0,1": 3}}`. Rationals
//! travel as integers or `"p/q"` strings; floating-point literals are
//! rejected everywhere. The `coxeter` map is optional since the bond
//! orders are determined by the Cartan products, but when present it must
//! agree with them.

use crate::game::Configuration;
use crate::graph::{
    build_family, build_general, CartanMatrix, CoxeterExponent, CoxeterGraph, Family, GraphError,
};
use crate::rat::{parse_rat, ParseRatError, Rat};
use num::bigint::BigInt;
use num::ToPrimitive;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("floating-point literal {0} rejected; write rationals as \"p/q\" strings")]
    FloatRejected(String),
    #[error(transparent)]
    Rat(#[from] ParseRatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Invalid(String),
}

/// Exact rational from a JSON value: integer or "p/q" string.
pub fn rat_from_json(v: &Value) -> Result<Rat, IoError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(BigInt::from(u)))
            } else {
                Err(IoError::FloatRejected(n.to_string()))
            }
        }
        Value::String(s) => Ok(parse_rat(s)?),
        other => Err(IoError::Invalid(format!(
            "expected integer or \"p/q\" string, got {other}"
        ))),
    }
}

/// Integers become JSON numbers, everything else a "p/q" string.
pub fn rat_to_json(r: &Rat) -> Value {
    if r.denom() == &BigInt::from(1) {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    json!(r.to_string())
}

/// Parse a graph description (see the module docs for the two forms).
pub fn graph_from_json_str(s: &str) -> Result<CoxeterGraph, IoError> {
    let value: Value = serde_json::from_str(s)?;
    graph_from_json(&value)
}

pub fn graph_from_json(value: &Value) -> Result<CoxeterGraph, IoError> {
    let obj = value
        .as_object()
        .ok_or_else(|| IoError::Invalid("graph description must be a JSON object".into()))?;
    if let Some(family) = obj.get("family") {
        let name = family
            .as_str()
            .ok_or_else(|| IoError::Invalid("\"family\" must be a string".into()))?;
        let rank = obj
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| IoError::Invalid("\"rank\" must be a nonnegative integer".into()))?;
        let spec = format!("{name}{rank}");
        let family = Family::parse(&spec)
            .ok_or_else(|| IoError::Invalid(format!("unknown family {spec:?}")))?;
        return Ok(build_family(family)?);
    }
    let cartan_rows = obj
        .get("cartan")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Invalid("expected \"family\" or \"cartan\"".into()))?;
    let mut rows = Vec::with_capacity(cartan_rows.len());
    for row in cartan_rows {
        let row = row
            .as_array()
            .ok_or_else(|| IoError::Invalid("cartan rows must be arrays".into()))?;
        rows.push(
            row.iter()
                .map(rat_from_json)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let cartan = CartanMatrix::from_rows(rows)?;
    let exponents = match obj.get("coxeter") {
        None => None,
        Some(Value::Object(map)) => Some(parse_exponent_map(map)?),
        Some(other) => {
            return Err(IoError::Invalid(format!(
                "\"coxeter\" must be an object, got {other}"
            )))
        }
    };
    Ok(build_general(cartan, exponents.as_ref())?)
}

fn parse_exponent_map(
    map: &Map<String, Value>,
) -> Result<BTreeMap<(usize, usize), CoxeterExponent>, IoError> {
    let mut out = BTreeMap::new();
    for (key, val) in map {
        let mut parts = key.split(',');
        let (Some(i), Some(j), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(IoError::Invalid(format!(
                "coxeter key {key:?} must look like \"i,j\""
            )));
        };
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| IoError::Invalid(format!("bad vertex in key {key:?}")))?;
        let j: usize = j
            .trim()
            .parse()
            .map_err(|_| IoError::Invalid(format!("bad vertex in key {key:?}")))?;
        let exp = match val {
            Value::Number(n) => {
                let m = n
                    .as_u64()
                    .ok_or_else(|| IoError::FloatRejected(n.to_string()))?;
                CoxeterExponent::Finite(m as u32)
            }
            Value::String(s) if s == "inf" || s == "infinity" => CoxeterExponent::Infinite,
            other => {
                return Err(IoError::Invalid(format!(
                    "coxeter value for {key:?} must be an integer or \"inf\", got {other}"
                )))
            }
        };
        out.insert((i, j), exp);
    }
    Ok(out)
}

/// Serialize a graph: named families keep their name, everything else gets
/// the full Cartan matrix with the derived bond orders.
pub fn graph_to_json(graph: &CoxeterGraph) -> Value {
    if let Some(family) = graph.family() {
        let (name, rank) = match family {
            Family::A(r) => ("A", r),
            Family::D(r) => ("D", r),
            Family::E(r) => ("E", r),
            Family::ATilde(r) => ("A~", r),
            Family::DTilde(r) => ("D~", r),
            Family::ETilde(r) => ("E~", r),
        };
        return json!({"family": name, "rank": rank});
    }
    let cartan: Vec<Vec<Value>> = graph
        .cartan()
        .rows()
        .iter()
        .map(|row| row.iter().map(rat_to_json).collect())
        .collect();
    let mut coxeter = Map::new();
    for i in graph.vertices() {
        for j in graph.vertices().skip(i + 1) {
            if graph.adjacent(i, j) {
                let val = match graph.exponent(i, j) {
                    CoxeterExponent::Finite(m) => json!(m),
                    CoxeterExponent::Infinite => json!("inf"),
                };
                coxeter.insert(format!("{i},{j}"), val);
            }
        }
    }
    json!({"cartan": cartan, "coxeter": coxeter})
}

/// Configuration from a JSON array of integers/"p/q" strings.
pub fn config_from_json_str(s: &str) -> Result<Configuration, IoError> {
    let value: Value = serde_json::from_str(s)?;
    let arr = value
        .as_array()
        .ok_or_else(|| IoError::Invalid("configuration must be a JSON array".into()))?;
    let amps = arr
        .iter()
        .map(rat_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Configuration::new(amps))
}

pub fn config_to_json(v: &Configuration) -> Value {
    Value::Array(v.amps.iter().map(rat_to_json).collect())
}
