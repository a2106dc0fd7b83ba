//! Browser bindings. Each export has a plain Rust twin returning
//! `Result<String, String>` so the logic is testable without a JS host.

use bookcoh::algebra::poisson::parse_rational;
use bookcoh::cohomology::{classify, cohomology_dims};
use bookcoh::{format_multivector, parse_multivector};
use serde_json::{json, Map, Value};
use wasm_bindgen::prelude::*;

/// Largest dimension the page accepts; slices grow quickly past this.
pub const MAX_N: usize = 6;

fn check_n(n: usize) -> Result<(), String> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must lie in 2..={MAX_N}"))
    }
}

/// The dimension table for `n` as JSON (`n`, `label`, `entries`, `totals`).
pub fn dims_json(n: usize) -> Result<String, String> {
    check_n(n)?;
    let table = cohomology_dims(n, None, None).map_err(|e| e.to_string())?;
    serde_json::to_string(&table).map_err(|e| e.to_string())
}

/// `d_book` of the parsed field, in the canonical text form.
pub fn differential_text(input: &str, n: usize) -> Result<String, String> {
    check_n(n)?;
    let mu = parse_multivector(input.trim(), n).map_err(|e| e.to_string())?;
    Ok(format_multivector(&mu.d_book()))
}

/// Coordinates of the class of a cocycle, as
/// `{"degree": k, "dt": {"(I|J)": "p/q"}, "plain": {...}}`.
pub fn classify_json(input: &str, n: usize, t0: &str) -> Result<String, String> {
    check_n(n)?;
    let t0 = parse_rational(if t0.trim().is_empty() { "0" } else { t0.trim() }).map_err(|e| e.to_string())?;
    let mu = parse_multivector(input.trim(), n).map_err(|e| e.to_string())?;
    let class = classify(&mu, &t0).map_err(|e| e.to_string())?;
    let coords = |m: &std::collections::BTreeMap<_, bookcoh::Rational>| -> Map<String, Value> {
        m.iter().map(|(p, v): (&bookcoh::indexing::IndexPair, _)| (p.to_string(), json!(v.to_string()))).collect()
    };
    let v = json!({ "degree": class.k, "dt": coords(&class.dt_coords), "plain": coords(&class.plain_coords) });
    Ok(v.to_string())
}

#[wasm_bindgen]
pub fn dims(n: usize) -> Result<String, JsValue> {
    dims_json(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn differential(input: &str, n: usize) -> Result<String, JsValue> {
    differential_text(input, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classifyClass)]
pub fn classify_class(input: &str, n: usize, t0: &str) -> Result<String, JsValue> {
    classify_json(input, n, t0).map_err(|e| JsValue::from_str(&e))
}
