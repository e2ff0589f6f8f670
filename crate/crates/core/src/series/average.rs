//! The average `∫_0^1 F_{k,D,d}(x) dx`, numerically by two routes, against
//! the exact value `H(k,|D|) H(k,|d|) / (2 ζ(1-2k))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::beta::c_k;
use super::cohen::cohen_h;
use super::counts::NddCounter;
use super::euler::divisor_sum;
use crate::arith::{format_rational, l_numeric, HighPrecisionReal};
use crate::qforms::DiscriminantPair;
use crate::{Error, Result};

const DIRICHLET_START: u64 = 1 << 10;
const DIRICHLET_CAP: u64 = 1 << 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AverageMethod {
    /// Closed assembly from L-values and the divisor sum.
    Chain,
    /// Truncated Dirichlet series `Σ N_{D,d}(n) n^{-k}`.
    Dirichlet,
}

impl fmt::Display for AverageMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AverageMethod::Chain => "chain",
            AverageMethod::Dirichlet => "dirichlet",
        })
    }
}

impl FromStr for AverageMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(AverageMethod::Chain),
            "dirichlet" => Ok(AverageMethod::Dirichlet),
            other => Err(Error::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AverageResult {
    method: AverageMethod,
    numeric_value: HighPrecisionReal,
    #[serde(serialize_with = "ser_rational")]
    exact_rhs: BigRational,
    abs_error: HighPrecisionReal,
    /// Number of Dirichlet terms summed; `None` for the chain method.
    truncation: Option<u64>,
    /// Change between the last two partial results (Dirichlet only).
    tail_estimate: Option<HighPrecisionReal>,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl AverageResult {
    pub fn new(
        method: AverageMethod,
        numeric_value: HighPrecisionReal,
        exact_rhs: BigRational,
        truncation: Option<u64>,
        tail_estimate: Option<HighPrecisionReal>,
    ) -> Self {
        let bits = numeric_value.precision_bits();
        let abs_error = (&numeric_value - &HighPrecisionReal::from_rational(&exact_rhs, bits)).abs();
        Self { method, numeric_value, exact_rhs, abs_error, truncation, tail_estimate }
    }

    pub fn method(&self) -> AverageMethod {
        self.method
    }

    pub fn numeric_value(&self) -> &HighPrecisionReal {
        &self.numeric_value
    }

    pub fn exact_rhs(&self) -> &BigRational {
        &self.exact_rhs
    }

    pub fn abs_error(&self) -> &HighPrecisionReal {
        &self.abs_error
    }

    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    pub fn tail_estimate(&self) -> Option<&HighPrecisionReal> {
        self.tail_estimate.as_ref()
    }
}

/// `H(k,|D|) H(k,|d|) / (2 ζ(1-2k))`.
pub fn average_exact(pair: &DiscriminantPair) -> Result<BigRational> {
    let k = pair.k();
    let num = cohen_h(k, pair.big_d().unsigned_abs())? * cohen_h(k, pair.d().unsigned_abs())?;
    Ok(num / (cohen_h(k, 0)? * BigRational::from_integer(BigInt::from(2))))
}

/// `c_k |Dd|^{k-1/2}` at the given precision.
fn leading_constant(pair: &DiscriminantPair, bits: u32) -> Result<HighPrecisionReal> {
    let k = pair.k();
    let delta = HighPrecisionReal::from_integer(pair.delta(), bits);
    let power = &delta.powi(k - 1) * &delta.sqrt()?;
    Ok(&HighPrecisionReal::from_rational(&c_k(k)?, bits) * &power)
}

/// `(-1)^k c_k |D0 d|^{k-1/2} L_{D0}(k) L_d(k) / ζ(2k) · Σ_{r|f} μ(r)(D0/r) r^{k-1} σ_{2k-1}(f/r)`.
pub fn average_chain(pair: &DiscriminantPair, bits: u32) -> Result<HighPrecisionReal> {
    let k = pair.k();
    let fd = pair.factor_big_d();
    let base = (fd.d0 as i128 * pair.d() as i128).unsigned_abs();
    let base = HighPrecisionReal::from_integer(BigInt::from(base), bits);
    let power = &base.powi(k - 1) * &base.sqrt()?;
    let l_prod = &l_numeric(k, fd.d0, bits)? * &l_numeric(k, pair.d(), bits)?;
    let zeta_2k = l_numeric(2 * k, 1, bits)?;
    let sum = HighPrecisionReal::from_integer(divisor_sum(k, fd.d0, fd.f)?, bits);
    let ck = HighPrecisionReal::from_rational(&c_k(k)?, bits);
    let value = &(&(&(&ck * &power) * &l_prod) / &zeta_2k) * &sum;
    Ok(if pair.sign() < 0 { -value } else { value })
}

/// Sum of `N_{D,d}(n) n^{-k}` over `lo < n <= hi`.
fn dirichlet_block(counter: &NddCounter, lo: u64, hi: u64, bits: u32) -> Result<HighPrecisionReal> {
    let k = counter.pair().k() as usize;
    let terms: Vec<Result<HighPrecisionReal>> = (lo + 1..=hi)
        .into_par_iter()
        .map(|n| {
            let c = counter.n(n)?;
            if c == 0 {
                return Ok(HighPrecisionReal::zero(bits));
            }
            let r = BigRational::new(BigInt::from(c), num_traits::pow(BigInt::from(n), k));
            Ok(HighPrecisionReal::from_rational(&r, bits))
        })
        .collect();
    let mut acc = HighPrecisionReal::zero(bits);
    for t in terms {
        acc = &acc + &t?;
    }
    Ok(acc)
}

/// `c_k |Dd|^{k-1/2} Σ_{n<=M} N_{D,d}(n) n^{-k}` with `M` doubled from
/// 1024 until two successive values differ by less than `tolerance / 4`.
///
/// Returns the value, the final `M` and the last change.
pub fn average_dirichlet(
    pair: &DiscriminantPair,
    tolerance: f64,
    bits: u32,
) -> Result<(HighPrecisionReal, u64, HighPrecisionReal)> {
    let counter = NddCounter::new(*pair)?;
    let lead = leading_constant(pair, bits)?;
    let threshold = HighPrecisionReal::from_rational(
        &BigRational::from_float(tolerance / 4.0).ok_or_else(|| Error::InvalidArgument("tolerance".into()))?,
        bits,
    );
    let mut m = DIRICHLET_START;
    let mut partial = dirichlet_block(&counter, 0, m, bits)?;
    let mut value = &lead * &partial;
    loop {
        if m >= DIRICHLET_CAP {
            return Err(Error::NonConvergence { cap: DIRICHLET_CAP, last_change: "unknown".into() });
        }
        let next = 2 * m;
        partial = &partial + &dirichlet_block(&counter, m, next, bits)?;
        let next_value = &lead * &partial;
        let change = (&next_value - &value).abs();
        m = next;
        value = next_value;
        if change < threshold {
            return Ok((value, m, change));
        }
        if m >= DIRICHLET_CAP {
            return Err(Error::NonConvergence { cap: DIRICHLET_CAP, last_change: format!("{:e}", change.to_f64()) });
        }
    }
}

/// Average of `F_{k,D,d}` over one period by the chosen method, with the
/// exact right-hand side attached.
pub fn average_f(
    pair: &DiscriminantPair,
    method: AverageMethod,
    tolerance: f64,
    precision_bits: u32,
) -> Result<AverageResult> {
    if pair.k() < 2 {
        return Err(Error::InvalidArgument("average requires k >= 2".into()));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let exact = average_exact(pair)?;
    match method {
        AverageMethod::Chain => {
            let value = average_chain(pair, precision_bits)?;
            Ok(AverageResult::new(method, value, exact, None, None))
        }
        AverageMethod::Dirichlet => {
            let (value, m, change) = average_dirichlet(pair, tolerance, precision_bits)?;
            Ok(AverageResult::new(method, value, exact, Some(m), Some(change)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pair(k: u32, big_d: i64, d: i64) -> DiscriminantPair {
        DiscriminantPair::new(k, big_d, d).unwrap()
    }

    #[test]
    fn exact_values() {
        assert_eq!(average_exact(&pair(2, 5, 1)).unwrap(), rat(2, 1));
        assert_eq!(average_exact(&pair(2, 8, 1)).unwrap(), rat(5, 1));
        assert_eq!(average_exact(&pair(2, 45, 5)).unwrap(), rat(1488, 5));
        assert_eq!(average_exact(&pair(3, -4, -3)).unwrap(), rat(-14, 1));
        assert_eq!(average_exact(&pair(3, -36, -3)).unwrap(), rat(-3542, 1));
        assert_eq!(average_exact(&pair(4, 12, 1)).unwrap(), rat(46, 1));
        assert_eq!(average_exact(&pair(5, -7, -4)).unwrap(), rat(-5280, 1));
    }

    #[test]
    fn chain_matches_exact() {
        let tol = HighPrecisionReal::from_rational(&rat(1, 1_000_000_000_000), 256);
        for (k, big_d, d) in [(2, 5, 1), (3, -4, -3), (3, -36, -3), (2, 45, 5)] {
            let r = average_f(&pair(k, big_d, d), AverageMethod::Chain, 1e-12, 256).unwrap();
            assert!(r.abs_error() < &tol, "({k},{big_d},{d}) error {}", r.abs_error());
        }
    }

    #[test]
    fn rejects_k_one_and_bad_tolerance() {
        assert!(average_f(&pair(1, -4, -3), AverageMethod::Chain, 1e-12, 256).is_err());
        assert!(average_f(&pair(2, 5, 1), AverageMethod::Chain, 0.0, 256).is_err());
    }

    #[test]
    fn abs_error_is_recomputed() {
        let v = HighPrecisionReal::from_rational(&rat(5, 2), 128);
        let r = AverageResult::new(AverageMethod::Chain, v, rat(2, 1), None, None);
        assert_eq!(r.abs_error().to_rational(), rat(1, 2));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("chain".parse::<AverageMethod>().unwrap(), AverageMethod::Chain);
        assert_eq!("dirichlet".parse::<AverageMethod>().unwrap(), AverageMethod::Dirichlet);
        assert!("simpson".parse::<AverageMethod>().is_err());
    }
}
