//! Exact arithmetic for sums of quadratic functions with two discriminants.
//!
//! The crate evaluates
//!
//! ```text
//! F_{k,D,d}(x) = Σ_{Q=[a,b,c], b²-4ac = Dd, a < 0 < Q(x)} χ_d(Q) Q(x)^{k-1}
//! ```
//!
//! at rational `x`, the genus character `χ_d`, the counting function
//! `N_{D,d}(n)`, Cohen's numbers `H(k, N)` and the q-expansion of Cohen's
//! Eisenstein series, and ships identity suites that check the relations
//! between them (multiplicativity, Euler factors, average values, the
//! vanishing of `F_{1,D,d}` at rationals).
//!
//! Layout:
//! - [`arith`]: rationals, a fixed-point high-precision real, Kronecker
//!   symbols, multiplicative functions, Bernoulli numbers, L-values.
//! - [`qforms`]: quadratic forms, discriminants, genus characters, indefinite
//!   reduction and class cycles.
//! - [`series`]: the summatory objects built on top.
//! - [`verify`]: identity suites with JSON reports.
//! - [`cli`]: the `qsum` command-line front end.

pub mod arith;
pub mod cli;
mod error;
pub mod qforms;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

pub use arith::{ExactRational, HighPrecisionReal, PrimeFactorization};
pub use qforms::{DiscriminantFactorization, DiscriminantPair, FormClass, QuadraticForm};
pub use series::{AverageMethod, AverageResult, QExpansion, TruncatedSeries};
pub use verify::{run_suite, Suite, SuiteParams, VerificationReport};
