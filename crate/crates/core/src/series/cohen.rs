//! Cohen's numbers `H(k, N)`, the coefficients of the weight `k + 1/2`
//! Eisenstein series `ζ(1-2k) + Σ_N H(k, N) q^N`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::euler::divisor_sum;
use crate::arith::{bernoulli, l_negative};
use crate::qforms::factor_discriminant;
use crate::{Error, Result};

/// `ζ(1-2k) = -B_{2k}/(2k)`.
pub fn zeta_one_minus_2k(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(-bernoulli(2 * k as usize) / BigRational::from_integer(BigInt::from(2 * k)))
}

/// `H(k, N)`.
///
/// `H(k, 0) = ζ(1-2k)`; `H(k, N) = 0` when `(-1)^k N ≡ 2, 3 (mod 4)`;
/// otherwise, with `(-1)^k N = D0 f²`,
/// `H(k, N) = L(1-k, χ_{D0}) Σ_{r|f} μ(r) (D0/r) r^{k-1} σ_{2k-1}(f/r)`.
pub fn cohen_h(k: u32, n: u64) -> Result<BigRational> {
    if n == 0 {
        return zeta_one_minus_2k(k);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let signed = i64::try_from(n).map_err(|_| Error::Overflow("N"))?;
    let signed = if k.is_multiple_of(2) { signed } else { -signed };
    if !matches!(signed.rem_euclid(4), 0 | 1) {
        return Ok(BigRational::from_integer(BigInt::from(0)));
    }
    let fd = factor_discriminant(signed)?;
    let sum = divisor_sum(k, fd.d0, fd.f)?;
    Ok(l_negative(k, fd.d0)? * BigRational::from_integer(sum))
}
