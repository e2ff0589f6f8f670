//! Exact integer and rational kernel plus the high-precision numerics used
//! for L-values.

mod bernoulli;
mod factor;
mod kronecker;
mod rational;
mod real;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_poly, generalized_bernoulli, l_negative};
pub use factor::{factorize, moebius, sigma_pow, PrimeFactorization};
pub use kronecker::{jacobi, kronecker};
pub use rational::{decimal_expansion, format_rational, parse_rational, rat, ExactRational};
pub use real::{HighPrecisionReal, DEFAULT_PRECISION_BITS};
pub use zeta::{hurwitz_zeta_numeric, l_numeric};
