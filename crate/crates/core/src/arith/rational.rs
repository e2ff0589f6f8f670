use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always normalized with a positive
/// denominator.
pub type ExactRational = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer (`-14`) or a fraction (`3/7`, `-3/7`).
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let bad = || Error::InvalidArgument(format!("malformed rational '{s}' (expected integer or p/q)"));
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() || den.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal expansion truncated toward zero after `digits` fractional
/// digits. The flag is true when the expansion is exact.
pub fn decimal_expansion(r: &ExactRational, digits: usize) -> (String, bool) {
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom();
    let (int_part, mut rem) = num.div_rem(den);
    let mut frac = String::new();
    let ten = BigInt::from(10);
    for _ in 0..digits {
        if rem.is_zero() {
            break;
        }
        rem *= &ten;
        let (q, r2) = rem.div_rem(den);
        frac.push_str(&q.to_string());
        rem = r2;
    }
    let exact = rem.is_zero();
    let mut out = String::new();
    if neg && !(int_part.is_zero() && frac.bytes().all(|c| c == b'0')) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if !frac.is_empty() {
        out.push('.');
        out.push_str(&frac);
    }
    (out, exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-14").unwrap(), rat(-14, 1));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(-14, 1)), "-14");
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        for bad in ["", "1/0", "1/-2", "x", "1.5", "--1", "1/2/3", "+3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_expansion(&rat(1, 4), 40), ("0.25".into(), true));
        assert_eq!(decimal_expansion(&rat(-7, 1), 40), ("-7".into(), true));
        let (s, exact) = decimal_expansion(&rat(-1, 3), 5);
        assert_eq!(s, "-0.33333");
        assert!(!exact);
    }
}
