use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Exponent of `p` (0 if absent).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// All positive divisors, in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Trial division up to `√n`.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("factorize needs n >= 1".into()));
    }
    let mut n = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(PrimeFactorization { factors })
}

pub fn moebius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if f.iter().any(|(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Divisor power sum `σ_m(n) = Σ_{t | n} t^m`.
pub fn sigma_pow(m: u32, n: u64) -> Result<BigInt> {
    let f = factorize(n)?;
    let mut total = BigInt::one();
    for (p, e) in f.iter() {
        let pm = num_traits::pow(BigInt::from(p), m as usize);
        let mut local = BigInt::zero();
        let mut term = BigInt::one();
        for _ in 0..=e {
            local += &term;
            term *= &pm;
        }
        total *= local;
    }
    Ok(total)
}
