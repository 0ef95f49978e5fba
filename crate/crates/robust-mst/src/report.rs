//! Solution reports and canonical JSON output.
//!
//! Everything the toolkit writes (instance files, solution reports) goes
//! through [`canonical_json_pretty`], which sorts object keys, prints floats
//! in their shortest round-trip form, and normalizes `-0.0` to `0.0`. Two
//! runs that compute the same numbers therefore produce byte-identical
//! files, which the replay tests rely on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one solver invocation, in the shape the CLI writes to disk.
///
/// Fields that do not apply to an algorithm are `null` rather than absent,
/// so every report has the same shape. `wall_time_ms` is zero unless timing
/// was explicitly requested, because real timings would break byte-for-byte
/// replay of otherwise deterministic runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub algorithm: String,
    pub completions: Option<BTreeMap<String, Vec<usize>>>,
    pub first_stage_edges: Option<Vec<usize>>,
    pub iterations: u64,
    pub lp_bound: Option<f64>,
    pub seed: u64,
    pub tree_edges: Option<Vec<usize>>,
    pub value: f64,
    pub wall_time_ms: f64,
}

impl SolutionReport {
    pub fn to_canonical_json(&self) -> String {
        canonical_json_pretty(self)
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, serde_json::Error> {
        serde_json::from_slice(bytes)
    }
}

/// Serializes any value to canonical pretty JSON: keys sorted, floats in
/// shortest round-trip form, `-0.0` normalized, trailing newline.
pub fn canonical_json_pretty<T: Serialize>(value: &T) -> String {
    let mut tree = serde_json::to_value(value).expect("value serializes to JSON");
    normalize_negative_zeros(&mut tree);
    let mut out = serde_json::to_string_pretty(&tree).expect("JSON tree prints");
    out.push('\n');
    out
}

fn normalize_negative_zeros(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if x == 0.0 && x.is_sign_negative() {
                    *n = serde_json::Number::from_f64(0.0).unwrap();
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(normalize_negative_zeros),
        Value::Object(map) => map.values_mut().for_each(normalize_negative_zeros),
        _ => {}
    }
}
