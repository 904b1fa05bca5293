//! Browser bindings for three interactive operations: quartic symbol
//! evaluation (with the factorization oracle as a live cross-check), the
//! quadratic-form witnesses attached to a prime, and small statement scans.
//!
//! The logic lives in [`ops`] as plain functions over strings so it can be
//! unit-tested natively; the `#[wasm_bindgen]` exports are thin wrappers.

use wasm_bindgen::prelude::*;

pub mod ops;

fn to_js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// ((num/den))₄ with the independent factorization oracle run alongside
/// whenever the denominator is small enough to factor.
#[wasm_bindgen]
pub fn quartic_symbol(num: &str, den: &str) -> Result<String, JsValue> {
    to_js(ops::quartic_symbol_json(num, den))
}

/// The normalized p = c²+d² plus all solutions of 4p = x²+qy² and
/// p = x²+2qy², sign-expanded the way the catalog uses them.
#[wasm_bindgen]
pub fn form_witnesses(p: u64, q: u64) -> Result<String, JsValue> {
    to_js(ops::form_witnesses_json(p, q))
}

/// Scans one catalog statement up to a (capped) prime bound and summarizes.
#[wasm_bindgen]
pub fn scan_statement(statement: &str, parameter: u64, pmax: u64) -> Result<String, JsValue> {
    to_js(ops::scan_statement_json(statement, parameter, pmax))
}

/// The statement ids the scan panel accepts.
#[wasm_bindgen]
pub fn statement_ids() -> String {
    ops::statement_ids()
}
