//! JSON helpers shared by the report types.
//!
//! Exact integers are emitted as JSON numbers when they fit in 64 bits and
//! as decimal strings otherwise. Object keys are sorted (serde_json's
//! default map), which keeps output byte-deterministic.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::Series;

pub fn exact_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn exact_uint(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn series(s: &Series) -> Value {
    Value::Array(s.coeffs().iter().map(exact_int).collect())
}

/// `{"d": count, ...}` with dimension keys.
pub fn count_map(m: &BTreeMap<u32, BigUint>) -> Value {
    let mut out = Map::new();
    for (d, c) in m {
        out.insert(d.to_string(), exact_uint(c));
    }
    Value::Object(out)
}

/// Parses a count that may be a JSON number or a decimal string.
pub fn parse_uint(v: &Value) -> Option<BigUint> {
    match v {
        Value::Number(n) => n.as_u64().map(BigUint::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}
