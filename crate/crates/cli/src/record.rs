use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};

use pellkit::WitnessTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Empty,
    Error,
}

/// One line of standard output.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<Map<String, Value>>,
    pub status: Status,
    pub error_detail: Option<String>,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            status: Status::Empty,
            error_detail: None,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

pub fn num(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn nums<T: std::fmt::Display>(vs: &[T]) -> Value {
    Value::Array(vs.iter().map(num).collect())
}

pub fn witness_map(w: &WitnessTriple) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), num(&w.n));
    m.insert("d1".into(), num(&w.d1));
    m.insert("d2".into(), num(&w.d2));
    m.insert("delta".into(), num(w.delta));
    m.insert("eps".into(), num(&w.eps));
    m.insert("gcd".into(), num(w.gcd()));
    m
}

pub fn pair(x: &BigInt, y: &BigInt) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("x".into(), num(x));
    m.insert("y".into(), num(y));
    m
}
