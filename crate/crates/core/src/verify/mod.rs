//! Identity suites with structured JSON reports.
//!
//! Each suite is deterministic given its [`SuiteParams`]; random instances
//! come from a ChaCha generator seeded with `params.seed`, and the seed is
//! recorded in the report.

mod oracles;
mod report;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

pub use oracles::{adaptive_simpson, hurwitz_class_number, PI_100};
pub use report::{CaseRecord, VerificationReport};
pub use suites::{
    admissible_characters, class_instances, default_matrix, euler_instances, forms_in_box, table_p_divides_f_and_d,
    theorem2_pairs, PrimeCase, DIRICHLET_MAX_DELTA, EULER_ORDER, EULER_PRIMES, GENUS_DELTAS,
};

use crate::arith::DEFAULT_PRECISION_BITS;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Prop1,
    Prop2,
    Theorem1,
    Theorem2,
    Genus,
    Classes,
    Arith,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Prop1, Suite::Prop2, Suite::Theorem1, Suite::Theorem2, Suite::Genus, Suite::Classes, Suite::Arith];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Genus => "genus",
            Suite::Classes => "classes",
            Suite::Arith => "arith",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// How `theorem1` computes the average of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem1Method {
    Chain,
    Dirichlet,
    /// Midpoint rule over exact values of `F`.
    Quadrature,
}

impl Theorem1Method {
    pub fn name(&self) -> &'static str {
        match self {
            Theorem1Method::Chain => "chain",
            Theorem1Method::Dirichlet => "dirichlet",
            Theorem1Method::Quadrature => "quadrature",
        }
    }

    /// 1e-12 absolute, 1e-2 absolute, 5e-2 relative.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Theorem1Method::Chain => 1e-12,
            Theorem1Method::Dirichlet => 1e-2,
            Theorem1Method::Quadrature => 5e-2,
        }
    }
}

impl FromStr for Theorem1Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(Theorem1Method::Chain),
            "dirichlet" => Ok(Theorem1Method::Dirichlet),
            "quadrature" => Ok(Theorem1Method::Quadrature),
            other => Err(Error::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Suite configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteParams {
    pub seed: u64,
    pub method: Theorem1Method,
    /// Overrides the method's default tolerance.
    pub tolerance: Option<f64>,
    pub precision_bits: u32,
    /// Midpoint samples for the quadrature method.
    pub quadrature_samples: u64,
    /// Random rationals in `theorem2`.
    pub theorem2_samples: usize,
    /// Largest denominator of random rationals in `theorem2`.
    pub max_denominator: i64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            method: Theorem1Method::Chain,
            tolerance: None,
            precision_bits: DEFAULT_PRECISION_BITS,
            quadrature_samples: 211,
            theorem2_samples: 200,
            max_denominator: 40,
        }
    }
}

impl SuiteParams {
    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or_else(|| self.method.default_tolerance())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.precision_bits < 64 || self.precision_bits > 4096 {
            return bad("precision_bits must lie in [64, 4096]");
        }
        if !(self.tolerance() > 0.0 && self.tolerance() < 1.0) {
            return bad("tolerance must lie in (0, 1)");
        }
        if self.quadrature_samples == 0 || self.quadrature_samples > 2000 {
            return bad("quadrature_samples must lie in [1, 2000]");
        }
        if self.theorem2_samples == 0 || self.theorem2_samples > 100_000 {
            return bad("theorem2_samples must lie in [1, 100000]");
        }
        if !(1..=200).contains(&self.max_denominator) {
            return bad("max_denominator must lie in [1, 200]");
        }
        Ok(())
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    params.validate()?;
    let start = Instant::now();
    let cases = match suite {
        Suite::Prop1 => suites::prop1(params),
        Suite::Prop2 => suites::prop2(params),
        Suite::Theorem1 => suites::theorem1(params),
        Suite::Theorem2 => suites::theorem2(params),
        Suite::Genus => suites::genus(params),
        Suite::Classes => suites::classes(params),
        Suite::Arith => suites::arith(params),
    }?;
    let duration_ms = start.elapsed().as_millis() as u64;
    Ok(VerificationReport::new(suite.name(), params.seed, cases, duration_ms))
}

/// [`run_suite`] by name.
pub fn run_suite_named(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    run_suite(name.parse()?, params)
}
