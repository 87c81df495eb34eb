//! Machine-readable verification reports.
//!
//! Maps are ordered and no timestamps are recorded, so a fixed configuration
//! always serializes to the same bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// Outcome of one numerical check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub params: BTreeMap<String, Value>,
    /// Smallest constant that makes the checked inequality hold on the grid.
    /// Infinite values serialize as `null`.
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_infinity")]
    pub empirical_constant: f64,
    /// Largest excess over the checked bound; zero or negative when it holds.
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_infinity")]
    pub max_violation: f64,
    pub pass: bool,
    pub grid: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(lemma: impl Into<String>) -> Self {
        Self {
            lemma: lemma.into(),
            params: BTreeMap::new(),
            empirical_constant: 0.0,
            max_violation: 0.0,
            pass: false,
            grid: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn grid(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.grid.insert(key.to_string(), value.into());
        self
    }

    pub fn constant(mut self, c: f64) -> Self {
        self.empirical_constant = c;
        self
    }

    pub fn violation(mut self, v: f64) -> Self {
        self.max_violation = v;
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

/// A named group of reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, reports: Vec<VerificationReport>) -> Self {
        let pass = reports.iter().all(|r| r.pass);
        Self { suite: suite.into(), pass, reports }
    }
}

/// JSON number for finite values, `null` otherwise.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

fn null_as_infinity<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

/// Serde helpers for `f64` fields that may be infinite.
pub mod maybe_infinite {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        finite_or_null(x, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        null_as_infinity(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_constant_round_trips_as_null() {
        let r = VerificationReport::new("demo").param("rho", 1.0).constant(f64::INFINITY).pass(false);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"empirical_constant\":null"));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn suite_passes_only_if_all_pass() {
        let a = VerificationReport::new("a").pass(true);
        let b = VerificationReport::new("b").pass(false);
        assert!(SuiteReport::new("s", vec![a.clone()]).pass);
        assert!(!SuiteReport::new("s", vec![a, b]).pass);
    }
}
