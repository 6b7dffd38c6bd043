use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// One self-describing result document.
///
/// Big integers are carried as decimal strings in `exact_values` (and inside
/// `results`), never as JSON numbers.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub parameters: BTreeMap<&'static str, Value>,
    pub results: Value,
    pub exact_values: BTreeMap<String, String>,
    pub timing_ms: f64,
}

impl OutputRecord {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            parameters: BTreeMap::new(),
            results: Value::Null,
            exact_values: BTreeMap::new(),
            timing_ms: 0.0,
        }
    }

    pub fn param(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key, value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }
}

/// `x` with 15 significant digits.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (14 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.14e}")
    }
}
