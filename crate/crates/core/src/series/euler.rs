//! Local Euler factors of `Σ_n (-1)^k N_{D,d}(n) n^{-k}` and the divisor
//! sum that assembles them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::counts::NddCounter;
use crate::arith::{factorize, format_rational, kronecker, moebius, sigma_pow};
use crate::qforms::DiscriminantPair;
use crate::{Error, Result};

/// Power series truncated after `X^order`, exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<BigRational>) -> Self {
        assert!(!coefficients.is_empty(), "a truncated series has at least the constant term");
        Self { coefficients }
    }

    /// `Σ_n c_n X^n` from a polynomial, padded or cut to `order`.
    pub fn from_polynomial(poly: &[BigRational], order: usize) -> Self {
        let mut coefficients = vec![BigRational::zero(); order + 1];
        for (c, p) in coefficients.iter_mut().zip(poly) {
            *c = p.clone();
        }
        Self { coefficients }
    }

    /// `1/(1 - rX) = Σ r^n X^n`.
    pub fn geometric(ratio: &BigRational, order: usize) -> Self {
        let mut coefficients = Vec::with_capacity(order + 1);
        let mut cur = BigRational::one();
        for _ in 0..=order {
            coefficients.push(cur.clone());
            cur *= ratio;
        }
        Self { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coefficients: out }
    }

    /// Value at `X = x` of the truncated polynomial.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn check_prime(p: u64) -> Result<()> {
    let f = factorize(p)?;
    if f.factors() != [(p, 1)] {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// Local data at `p`: `(D0/p)`, `(d/p)` and `e` with `p^e || f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub chi_d0: i8,
    pub chi_d: i8,
    pub e: u32,
}

pub fn local_data(pair: &DiscriminantPair, p: u64) -> LocalData {
    let fd = pair.factor_big_d();
    let e = factorize(fd.f).map(|f| f.exponent_of(p)).unwrap_or(0);
    LocalData { chi_d0: kronecker(fd.d0, p as i64), chi_d: kronecker(pair.d(), p as i64), e }
}

/// Both sides of the Euler factor identity at `p`, as series in `X = p^{-k}`.
///
/// The left side has coefficients `(-1)^k N_{D,d}(p^n)`. The right side is
///
/// ```text
/// (1 - X²) / ((1 - (D0/p) X)(1 - (d/p) X)) · p^{-e(2k-1)} (σ_{2k-1}(p^e) - (D0/p) p^{k-1} σ_{2k-1}(p^{e-1}))
/// ```
///
/// where the last factor is rewritten with `p^{-(2k-1)} = pX²` and
/// `p^{k-1}·p^{-(2k-1)} = X` as the polynomial
/// `Σ_{j<=e} p^j X^{2j} - (D0/p) Σ_{j<e} p^j X^{2j+1}`, so the comparison is
/// coefficientwise in `X` rather than at the single point `X = p^{-k}`.
pub fn euler_factor_both(pair: &DiscriminantPair, p: u64, order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    check_prime(p)?;
    let counter = NddCounter::new(*pair)?;
    let sign = pair.sign();
    let mut lhs = Vec::with_capacity(order + 1);
    let mut pn: u64 = 1;
    for n in 0..=order {
        if n > 0 {
            pn = pn.checked_mul(p).ok_or(Error::Overflow("p^n"))?;
        }
        lhs.push(int(sign * counter.n(pn)?));
    }
    let lhs = TruncatedSeries::new(lhs);
    let rhs = euler_factor_rhs(pair, p, order)?;
    Ok((lhs, rhs))
}

/// Right side of [`euler_factor_both`] alone.
pub fn euler_factor_rhs(pair: &DiscriminantPair, p: u64, order: usize) -> Result<TruncatedSeries> {
    check_prime(p)?;
    let LocalData { chi_d0, chi_d, e } = local_data(pair, p);
    let mut sigma_poly = vec![BigRational::zero(); 2 * e as usize + 1];
    let mut pj = BigInt::one();
    for j in 0..=e as usize {
        sigma_poly[2 * j] += int(pj.clone());
        if j < e as usize {
            sigma_poly[2 * j + 1] -= int(BigInt::from(chi_d0) * &pj);
        }
        pj *= p;
    }
    let numerator = TruncatedSeries::from_polynomial(&[int(1), int(0), int(-1)], order);
    Ok(numerator
        .mul(&TruncatedSeries::geometric(&int(chi_d0), order))
        .mul(&TruncatedSeries::geometric(&int(chi_d), order))
        .mul(&TruncatedSeries::from_polynomial(&sigma_poly, order)))
}

/// The closed form of the Euler factor evaluated at `X = p^{-k}`, with
/// divisor sums and the convention `σ(1/p) = 0`.
pub fn euler_factor_closed_value(pair: &DiscriminantPair, p: u64) -> Result<BigRational> {
    check_prime(p)?;
    let k = pair.k();
    let LocalData { chi_d0, chi_d, e } = local_data(pair, p);
    let x = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(p), k as usize));
    let front = (int(1) - &x * &x) / ((int(1) - int(chi_d0) * &x) * (int(1) - int(chi_d) * &x));
    let pe = num_traits::pow(BigInt::from(p), e as usize);
    let sigma_e = sigma_pow(2 * k - 1, pe.clone().try_into().map_err(|_| Error::Overflow("p^e"))?)?;
    let sigma_e1 = if e == 0 {
        BigInt::zero()
    } else {
        sigma_pow(2 * k - 1, (pe.clone() / p).try_into().map_err(|_| Error::Overflow("p^e"))?)?
    };
    let pk1 = num_traits::pow(BigInt::from(p), k as usize - 1);
    let tail =
        BigRational::new(sigma_e - BigInt::from(chi_d0) * pk1 * sigma_e1, num_traits::pow(pe, 2 * k as usize - 1));
    Ok(front * tail)
}

/// `Σ_{r | f} μ(r) (D0/r) r^{k-1} σ_{2k-1}(f/r)`.
pub fn divisor_sum(k: u32, d0: i64, f: u64) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for r in factorize(f)?.divisors() {
        let mu = moebius(r)?;
        let chi = kronecker(d0, r as i64);
        if mu == 0 || chi == 0 {
            continue;
        }
        let term = num_traits::pow(BigInt::from(r), k as usize - 1) * sigma_pow(2 * k - 1, f / r)?;
        total += BigInt::from(mu * chi) * term;
    }
    Ok(total)
}

/// Both sides of
/// `f^{1-2k} Σ_{r|f} μ(r)(D0/r) r^{k-1} σ_{2k-1}(f/r)
///  = Π_{p^e || f} p^{-e(2k-1)} (σ_{2k-1}(p^e) + μ(p)(D0/p) p^{k-1} σ_{2k-1}(p^{e-1}))`.
pub fn f_divisor_identity(k: u32, d0: i64, f: u64) -> Result<(BigRational, BigRational)> {
    if k == 0 || f == 0 {
        return Err(Error::InvalidArgument("need k >= 1 and f >= 1".into()));
    }
    let w = 2 * k as usize - 1;
    let lhs = BigRational::new(divisor_sum(k, d0, f)?, num_traits::pow(BigInt::from(f), w));
    let mut rhs = BigRational::one();
    for (p, e) in factorize(f)?.iter() {
        let pe = p.pow(e);
        let local = sigma_pow(2 * k - 1, pe)?
            - BigInt::from(kronecker(d0, p as i64))
                * num_traits::pow(BigInt::from(p), k as usize - 1)
                * sigma_pow(2 * k - 1, pe / p)?;
        rhs *= BigRational::new(local, num_traits::pow(BigInt::from(pe), w));
    }
    Ok((lhs, rhs))
}
