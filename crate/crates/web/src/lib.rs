//! Browser bindings for the static demo in `www/`.
//!
//! Each export takes decimal strings and returns a JSON string, either
//! `{"ok": true, ...}` or `{"ok": false, "error": "..."}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use pellkit::{
    derive_params, find_pairs, fundamental_solution, generate, sqrt_cf, DivisorOracle,
    WitnessTriple,
};

/// Witness lists longer than this are refused.
pub const MAX_COUNT: u32 = 12;
/// The oracle factors `(n² + 1)/2`; above this the browser could stall.
pub const MAX_ORACLE_N: u64 = 1_000_000_000_000;

fn int(name: &str, s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|_| format!("{name}: '{s}' is not an integer"))
}

fn delta_arg(s: &str) -> Result<u64, String> {
    u64::from_str(s.trim()).map_err(|_| format!("delta: '{s}' is not a small non-negative integer"))
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn witness(w: &WitnessTriple) -> Value {
    json!({
        "n": w.n.to_string(),
        "d1": w.d1.to_string(),
        "d2": w.d2.to_string(),
        "gcd": w.gcd().to_string(),
    })
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = Value::Bool(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

fn expansion(d: &str) -> Result<Value, String> {
    let d = int("D", d)?;
    let exp = sqrt_cf(&d).map_err(|e| e.to_string())?;
    let fund = fundamental_solution(&d).map_err(|e| e.to_string())?;
    let trace: Vec<Value> = exp
        .pqa_trace
        .iter()
        .map(|s| json!([s.index, s.s.to_string(), s.t.to_string(), s.a.to_string()]))
        .collect();
    Ok(json!({
        "d": d.to_string(),
        "a0": exp.a0.to_string(),
        "period": strings(&exp.period),
        "pqa": trace,
        "x": fund.x.to_string(),
        "y": fund.y.to_string(),
    }))
}

fn family(delta: &str, eps: &str, count: u32) -> Result<Value, String> {
    if count == 0 || count > MAX_COUNT {
        return Err(format!("count must be between 1 and {MAX_COUNT}"));
    }
    let params = derive_params(delta_arg(delta)?, &int("eps", eps)?).map_err(|e| e.to_string())?;
    let run = generate(&params, count as usize).map_err(|e| e.to_string())?;
    let skipped: Vec<String> = run
        .skipped
        .iter()
        .map(|s| format!("index {}: {}", s.index, s.reason))
        .collect();
    Ok(json!({
        "case": params.case.name(),
        "radicand": params.radicand().to_string(),
        "unit": [run.unit.x.to_string(), run.unit.y.to_string()],
        "witnesses": run.witnesses.iter().map(witness).collect::<Vec<_>>(),
        "skipped": skipped,
    }))
}

fn pairs(n: &str, delta: &str, eps: &str) -> Result<Value, String> {
    let nv = int("n", n)?;
    if nv > BigInt::from(MAX_ORACLE_N) {
        return Err(format!("n is limited to {MAX_ORACLE_N} in the demo"));
    }
    let delta = delta_arg(delta)?;
    let eps = int("eps", eps)?;
    let set = DivisorOracle::default()
        .divisor_set(&nv)
        .map_err(|e| e.to_string())?;
    let found = find_pairs(&nv, delta, &eps).map_err(|e| e.to_string())?;
    let factors: Vec<Value> = set
        .factorization
        .iter()
        .map(|(p, e)| json!([p.to_string(), e]))
        .collect();
    Ok(json!({
        "m": set.m.to_string(),
        "factorization": factors,
        "divisor_count": set.divisors.len(),
        "pairs": found.iter().map(witness).collect::<Vec<_>>(),
    }))
}

/// Continued fraction of `√D` with its PQa trace and fundamental solution.
#[wasm_bindgen]
pub fn cf_expansion(d: &str) -> String {
    respond(expansion(d))
}

/// First `count` constructive witnesses for `(delta, eps)`.
#[wasm_bindgen]
pub fn family_witnesses(delta: &str, eps: &str, count: u32) -> String {
    respond(family(delta, eps, count))
}

/// Factorization of `(n² + 1)/2` and its divisor pairs summing to `delta·n + eps`.
#[wasm_bindgen]
pub fn oracle_pairs(n: &str, delta: &str, eps: &str) -> String {
    respond(pairs(n, delta, eps))
}
