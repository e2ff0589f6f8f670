use serde::Serialize;
use serde_json::{Map, Value};

use crate::arith::{format_rational, ExactRational, HighPrecisionReal};

/// One checked instance. `params` holds everything needed to re-run it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub params: Map<String, Value>,
    pub lhs: String,
    pub rhs: String,
    pub abs_error: Option<String>,
    pub exact: bool,
    pub pass: bool,
}

impl CaseRecord {
    /// Exact comparison of two strings that encode exact values.
    pub fn exact(params: Value, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = lhs == rhs;
        Self { params: into_map(params), lhs, rhs, abs_error: None, exact: true, pass }
    }

    pub fn rationals(params: Value, lhs: &ExactRational, rhs: &ExactRational) -> Self {
        Self::exact(params, format_rational(lhs), format_rational(rhs))
    }

    /// Numeric comparison; `pass` is decided by the caller.
    pub fn numeric(params: Value, lhs: String, rhs: String, abs_error: &HighPrecisionReal, pass: bool) -> Self {
        Self {
            params: into_map(params),
            lhs,
            rhs,
            abs_error: Some(abs_error.to_decimal_string(abs_error.decimal_digits())),
            exact: false,
            pass,
        }
    }

    /// A failed case carrying an error message in place of the left side.
    pub fn error(params: Value, message: String) -> Self {
        Self {
            params: into_map(params),
            lhs: format!("error: {message}"),
            rhs: String::new(),
            abs_error: None,
            exact: false,
            pass: false,
        }
    }

    /// Sort key: the params object as compact JSON, keys in order.
    pub fn canonical_key(&self) -> String {
        serde_json::to_string(&self.params).expect("params serialize")
    }
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

/// Outcome of one suite run.
///
/// Everything except `duration_ms` is a pure function of the suite name and
/// its parameters.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    suite: String,
    seed: u64,
    cases: Vec<CaseRecord>,
    pass: bool,
    duration_ms: u64,
}

impl VerificationReport {
    /// Sorts the cases by canonical key and derives the overall flag.
    pub fn new(suite: impl Into<String>, seed: u64, mut cases: Vec<CaseRecord>, duration_ms: u64) -> Self {
        cases.sort_by_cached_key(CaseRecord::canonical_key);
        let pass = cases.iter().all(|c| c.pass);
        Self { suite: suite.into(), seed, cases, pass, duration_ms }
    }

    pub fn suite(&self) -> &str {
        &self.suite
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cases(&self) -> &[CaseRecord] {
        &self.cases
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn duration_ms(&self) -> u64 {
        self.duration_ms
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `duration_ms` fixed at 0, for byte-level comparison.
    pub fn to_canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.duration_ms = 0;
        copy.to_json()
    }
}
