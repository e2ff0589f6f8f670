use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Extra fractional bits carried beyond the requested precision.
const GUARD_BITS: u32 = 32;

/// Binary fixed-point real: the value is `mantissa / 2^(precision_bits + 32)`.
///
/// Errors are absolute, which is what every caller here needs: L-values and
/// zeta values are O(1), and the larger factors (powers of |Dd|) are exact
/// integers or square roots computed at full precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighPrecisionReal {
    mantissa: BigInt,
    precision_bits: u32,
}

impl HighPrecisionReal {
    fn scale(&self) -> u32 {
        self.precision_bits + GUARD_BITS
    }

    pub fn zero(precision_bits: u32) -> Self {
        Self { mantissa: BigInt::zero(), precision_bits }
    }

    pub fn from_integer(n: impl Into<BigInt>, precision_bits: u32) -> Self {
        Self { mantissa: n.into() << (precision_bits + GUARD_BITS), precision_bits }
    }

    /// Nearest fixed-point value to `r`.
    pub fn from_rational(r: &BigRational, precision_bits: u32) -> Self {
        let shifted = r.numer() << (precision_bits + GUARD_BITS);
        Self { mantissa: round_div(&shifted, r.denom()), precision_bits }
    }

    /// Parses a plain decimal literal such as `-3.14159`.
    pub fn from_decimal_str(s: &str, precision_bits: u32) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed decimal '{s}'"));
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = BigRational::new(if neg { -num } else { num }, den);
        Ok(Self::from_rational(&r, precision_bits))
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { mantissa: self.mantissa.abs(), precision_bits: self.precision_bits }
    }

    /// Square root, rounded down. Rejects negative input.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative number".into()));
        }
        let m = (&self.mantissa << self.scale()).sqrt();
        Ok(Self { mantissa: m, precision_bits: self.precision_bits })
    }

    pub fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::from_integer(1, self.precision_bits);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.mantissa.clone(), BigInt::one() << self.scale());
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact rational value of the stored mantissa.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.scale())
    }

    /// Number of decimal digits justified by the precision.
    pub fn decimal_digits(&self) -> usize {
        (self.precision_bits as usize * 30103) / 100_000
    }

    /// Decimal string rounded to `digits` fractional digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let ten_pow = num_traits::pow(BigInt::from(10), digits);
        let scaled = round_div(&(&self.mantissa * ten_pow), &(BigInt::one() << self.scale()));
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (int_part, frac_part) = s.split_at(s.len() - digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(int_part);
        if digits > 0 {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.precision_bits, other.precision_bits, "mixed precisions");
    }
}

/// Division rounding to nearest, ties away from zero.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    if (r.abs() << 1u32) >= den.abs() {
        if num.is_negative() != den.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.decimal_digits()))
    }
}

impl Serialize for HighPrecisionReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl PartialOrd for HighPrecisionReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.check(other);
        Some(self.mantissa.cmp(&other.mantissa))
    }
}

impl<'a> Add<&'a HighPrecisionReal> for &'a HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn add(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        self.check(rhs);
        HighPrecisionReal { mantissa: &self.mantissa + &rhs.mantissa, precision_bits: self.precision_bits }
    }
}

impl<'a> Sub<&'a HighPrecisionReal> for &'a HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn sub(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        self.check(rhs);
        HighPrecisionReal { mantissa: &self.mantissa - &rhs.mantissa, precision_bits: self.precision_bits }
    }
}

impl<'a> Mul<&'a HighPrecisionReal> for &'a HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn mul(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        self.check(rhs);
        let prod = &self.mantissa * &rhs.mantissa;
        HighPrecisionReal {
            mantissa: round_div(&prod, &(BigInt::one() << self.scale())),
            precision_bits: self.precision_bits,
        }
    }
}

impl<'a> Div<&'a HighPrecisionReal> for &'a HighPrecisionReal {
    type Output = HighPrecisionReal;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        self.check(rhs);
        assert!(!rhs.mantissa.is_zero(), "division by zero");
        HighPrecisionReal {
            mantissa: round_div(&(&self.mantissa << self.scale()), &rhs.mantissa),
            precision_bits: self.precision_bits,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $m(self, rhs: HighPrecisionReal) -> HighPrecisionReal {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        HighPrecisionReal { mantissa: -self.mantissa, precision_bits: self.precision_bits }
    }
}
