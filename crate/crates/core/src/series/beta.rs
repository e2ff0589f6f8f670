use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::HighPrecisionReal;
use crate::qforms::QuadraticForm;
use crate::{Error, Result};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `c_k = 2^{1-2k} ∫_{-1}^{1} (1-t²)^{k-1} dt = 2·k!·(k-1)!/(2k)!`.
pub fn c_k(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("c_k needs k >= 1".into()));
    }
    Ok(BigRational::new(BigInt::from(2) * factorial(k) * factorial(k - 1), factorial(2 * k)))
}

/// `β_k(Q) = ∫ max(0, Q(x))^{k-1} dx = c_k Δ^{k-1/2} |a|^{-k}` for `a < 0`.
pub fn beta_closed(k: u32, q: &QuadraticForm, precision_bits: u32) -> Result<HighPrecisionReal> {
    if q.a >= 0 {
        return Err(Error::InvalidArgument(format!("beta needs a < 0, got {q}")));
    }
    let delta = q.discriminant()?;
    if delta <= 0 {
        return Err(Error::InvalidArgument(format!("beta needs a positive discriminant, got {delta}")));
    }
    let exact = c_k(k)?
        * BigRational::new(
            num_traits::pow(BigInt::from(delta), k as usize - 1),
            num_traits::pow(BigInt::from(q.a.unsigned_abs()), k as usize),
        );
    let root = HighPrecisionReal::from_integer(delta, precision_bits).sqrt()?;
    Ok(&HighPrecisionReal::from_rational(&exact, precision_bits) * &root)
}
