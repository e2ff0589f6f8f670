use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{bernoulli, kronecker, HighPrecisionReal};
use crate::qforms::is_fundamental;
use crate::{Error, Result};

const MAX_CORRECTION_TERMS: usize = 64;

/// Hurwitz zeta `ζ(s, a) = Σ_{m>=0} (m+a)^{-s}` for integer `s >= 2` and
/// rational `0 < a <= 1`.
///
/// The first `max(32, precision_bits/2)` terms are summed directly; the tail
/// is the Euler–Maclaurin expansion at `w = N + a`,
/// `w^{1-s}/(s-1) + w^{-s}/2 + Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j-2) · w^{-s-2j+1}`,
/// whose terms are exact rationals. Correction terms are added until one
/// drops below `2^{-precision_bits-8}`.
pub fn hurwitz_zeta_numeric(s: u32, a: &BigRational, precision_bits: u32) -> Result<HighPrecisionReal> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("hurwitz zeta needs s >= 2, got {s}")));
    }
    if !a.is_positive() || *a > BigRational::one() {
        return Err(Error::InvalidArgument(format!("hurwitz zeta needs 0 < a <= 1, got {a}")));
    }
    let bits = precision_bits;
    let n_direct = std::cmp::max(32, bits / 2) as u64;
    let u = a.numer().clone();
    let v = a.denom().clone();

    let mut sum = HighPrecisionReal::zero(bits);
    for m in 0..n_direct {
        let base = BigInt::from(m) * &v + &u;
        let term = BigRational::new(num_traits::pow(v.clone(), s as usize), num_traits::pow(base, s as usize));
        sum = &sum + &HighPrecisionReal::from_rational(&term, bits);
    }

    let w = BigRational::from_integer(BigInt::from(n_direct)) + a;
    let w_inv = w.recip();
    let w_inv_s = num_traits::pow(w_inv.clone(), s as usize);
    let mut tail = &w_inv_s * &w / BigRational::from_integer(BigInt::from(s - 1));
    tail += &w_inv_s / BigRational::from_integer(BigInt::from(2));

    let threshold = BigInt::one() << (bits + 8);
    let w_inv_sq = &w_inv * &w_inv;
    let mut w_pow = &w_inv_s * &w_inv; // w^{-s-1}
    let mut rising = BigInt::from(s); // s(s+1)…(s+2j-2)
    let mut factorial = BigInt::from(2); // (2j)!
    let mut converged = false;
    for j in 1..=MAX_CORRECTION_TERMS {
        let coeff = bernoulli(2 * j) * BigRational::new(rising.clone(), factorial.clone());
        let term = coeff * &w_pow;
        tail += &term;
        if term.numer().abs() * &threshold < *term.denom() {
            converged = true;
            break;
        }
        let jj = j as u64;
        let s64 = u64::from(s);
        rising *= BigInt::from((s64 + 2 * jj - 1) * (s64 + 2 * jj));
        factorial *= BigInt::from((2 * jj + 1) * (2 * jj + 2));
        w_pow *= &w_inv_sq;
    }
    if !converged {
        return Err(Error::PrecisionLoss(format!(
            "Euler-Maclaurin tail for zeta({s}, {a}) not below 2^-{} after {MAX_CORRECTION_TERMS} terms",
            bits + 8
        )));
    }
    Ok(&sum + &HighPrecisionReal::from_rational(&tail, bits))
}

/// `L(s, χ_{d0}) = |d0|^{-s} Σ_{a=1}^{|d0|} χ(a) ζ(s, a/|d0|)`; `ζ(s)` for `d0 = 1`.
pub fn l_numeric(s: u32, d0: i64, precision_bits: u32) -> Result<HighPrecisionReal> {
    if !is_fundamental(d0) {
        return Err(Error::NotFundamental(d0));
    }
    let f = d0.unsigned_abs();
    if f == 1 {
        return hurwitz_zeta_numeric(s, &BigRational::one(), precision_bits);
    }
    let mut acc = HighPrecisionReal::zero(precision_bits);
    for a in 1..=f {
        let chi = kronecker(d0, a as i64);
        if chi == 0 {
            continue;
        }
        let z = hurwitz_zeta_numeric(s, &BigRational::new(BigInt::from(a), BigInt::from(f)), precision_bits)?;
        acc = if chi > 0 { &acc + &z } else { &acc - &z };
    }
    let scale = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(f), s as usize));
    Ok(&acc * &HighPrecisionReal::from_rational(&scale, precision_bits))
}
