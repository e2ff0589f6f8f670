//! Both sides of the q-expansion identity
//! `(ζ(1-2k)/H(k,|d|)) (H(k,|d|)/2 + Σ_D avg(F_{k,D,d}) q^{|D|}) = 𝓗_k/2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::average::{average_f, AverageMethod};
use super::cohen::cohen_h;
use crate::arith::{format_rational, HighPrecisionReal};
use crate::qforms::{is_discriminant, is_fundamental, DiscriminantPair};
use crate::{Error, Result};

/// One q-expansion coefficient.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(BigRational),
    Numeric(HighPrecisionReal),
}

impl Coefficient {
    pub fn to_real(&self, bits: u32) -> HighPrecisionReal {
        match self {
            Coefficient::Exact(r) => HighPrecisionReal::from_rational(r, bits),
            Coefficient::Numeric(v) => v.clone(),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coefficient::Exact(r) => serializer.serialize_str(&format_rational(r)),
            Coefficient::Numeric(v) => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("value", v)?;
                m.serialize_entry("precision_bits", &v.precision_bits())?;
                m.end()
            }
        }
    }
}

/// Formal series in the nome `q`, sparse in the exponent.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QExpansion {
    coefficients: BTreeMap<u64, Coefficient>,
}

impl QExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, exponent: u64, c: Coefficient) {
        self.coefficients.insert(exponent, c);
    }

    pub fn get(&self, exponent: u64) -> Option<&Coefficient> {
        self.coefficients.get(&exponent)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Coefficient)> {
        self.coefficients.iter().map(|(n, c)| (*n, c))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.coefficients.len()))?;
        for (n, c) in &self.coefficients {
            m.serialize_entry(&n.to_string(), c)?;
        }
        m.end()
    }
}

/// `(lhs, rhs)` up to `q^{n_max}`.
///
/// The right side holds `H(k, N)/2` for every `0 <= N <= n_max`. The left
/// side holds `ζ(1-2k)/2` at `N = 0` and, at each `N = |D|` with
/// `(-1)^k D > 0` a discriminant, `ζ(1-2k)/H(k,|d|)` times the chain-method
/// average of `F_{k,D,d}`. Exponents that are not of that form are absent on
/// the left; the right side is exactly 0 there.
pub fn qexpansion(k: u32, d: i64, n_max: u64, tolerance: f64, precision_bits: u32) -> Result<(QExpansion, QExpansion)> {
    if k < 2 {
        return Err(Error::InvalidArgument("q-expansion requires k >= 2".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let sign: i64 = if k.is_multiple_of(2) { 1 } else { -1 };
    if d.signum() != sign {
        return Err(Error::SignConstraint { k, big_d: sign, d });
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let zeta = cohen_h(k, 0)?;
    let h_d = cohen_h(k, d.unsigned_abs())?;
    let scale = HighPrecisionReal::from_rational(&(&zeta / &h_d), precision_bits);

    let mut rhs = QExpansion::new();
    for n in 0..=n_max {
        rhs.insert(n, Coefficient::Exact(cohen_h(k, n)? / &two));
    }

    let exponents: Vec<u64> =
        (1..=n_max).filter(|&n| i64::try_from(n).is_ok_and(|v| is_discriminant(sign * v))).collect();
    let values: Vec<Result<(u64, HighPrecisionReal)>> = exponents
        .par_iter()
        .map(|&n| {
            let pair = DiscriminantPair::new(k, sign * n as i64, d)?;
            let avg = average_f(&pair, AverageMethod::Chain, tolerance, precision_bits)?;
            Ok((n, &scale * avg.numeric_value()))
        })
        .collect();
    let mut lhs = QExpansion::new();
    lhs.insert(0, Coefficient::Exact(zeta / two));
    for v in values {
        let (n, value) = v?;
        lhs.insert(n, Coefficient::Numeric(value));
    }
    Ok((lhs, rhs))
}
