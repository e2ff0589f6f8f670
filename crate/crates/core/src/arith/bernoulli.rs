use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::kronecker;
use crate::qforms::is_fundamental;
use crate::{Error, Result};

fn cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 0..n {
        let next = &row[j] * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Computed from `Σ_{j<=m} C(m+1, j) B_j = 0` and memoized; the memo only
/// ever grows by appending values of that recurrence.
pub fn bernoulli(n: usize) -> BigRational {
    if let Some(b) = cache().read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut table = cache().write().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len();
        let row = binomial_row(m + 1);
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += BigRational::from_integer(row[j].clone()) * b;
            }
        }
        let b_m = -acc / BigRational::from_integer(BigInt::from(m + 1));
        table.push(b_m);
    }
    table[n].clone()
}

/// Bernoulli polynomial `B_n(x) = Σ_j C(n, j) B_j x^{n-j}`.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let row = binomial_row(n);
    // Horner in x over coefficients C(n, j) B_j, j = 0..n.
    let mut acc = BigRational::zero();
    for (j, c) in row.iter().enumerate() {
        acc = acc * x + BigRational::from_integer(c.clone()) * bernoulli(j);
    }
    acc
}

/// Generalized Bernoulli number `B_{n,χ}` for the Kronecker character of a
/// fundamental discriminant `d0`:
/// `f^{n-1} Σ_{a=1}^{f} χ(a) B_n(a/f)` with `f = |d0|`.
pub fn generalized_bernoulli(n: usize, d0: i64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("generalized Bernoulli index must be >= 1".into()));
    }
    if !is_fundamental(d0) {
        return Err(Error::NotFundamental(d0));
    }
    let f = d0.unsigned_abs();
    let mut sum = BigRational::zero();
    for a in 1..=f {
        let chi = kronecker(d0, a as i64);
        if chi == 0 {
            continue;
        }
        let x = BigRational::new(BigInt::from(a), BigInt::from(f));
        let b = bernoulli_poly(n, &x);
        if chi > 0 {
            sum += b;
        } else {
            sum -= b;
        }
    }
    Ok(sum * num_traits::pow(BigRational::from_integer(BigInt::from(f)), n - 1))
}

/// Exact `L(1-k, χ_{d0}) = -B_{k,χ}/k`; for `d0 = 1` this is `ζ(1-k)`.
pub fn l_negative(k: u32, d0: i64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("l_negative needs k >= 1".into()));
    }
    let b = generalized_bernoulli(k as usize, d0)?;
    Ok(-b / BigRational::from_integer(BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for j in 1..40 {
            assert!(bernoulli(2 * j + 1).is_zero());
        }
    }

    #[test]
    fn concurrent_reads_match_serial() {
        let serial: Vec<_> = (0..60).map(bernoulli).collect();
        let handles: Vec<_> =
            (0..4).map(|_| std::thread::spawn(|| (0..60).rev().map(bernoulli).collect::<Vec<_>>())).collect();
        for h in handles {
            let mut v = h.join().unwrap();
            v.reverse();
            assert_eq!(v, serial);
        }
    }

    /// `B_{n,χ}` from the generating function
    /// `Σ_a χ(a) t e^{at} / (e^{ft} - 1) = Σ_n B_{n,χ} t^n / n!`
    /// by power-series division, without Bernoulli numbers.
    fn generating_function_oracle(n: usize, d0: i64) -> BigRational {
        let f = d0.unsigned_abs() as i64;
        let len = n + 1;
        let mut fact = vec![BigRational::one()];
        for i in 1..=len + 1 {
            let prev = fact[i - 1].clone();
            fact.push(prev * BigRational::from_integer(BigInt::from(i)));
        }
        // numerator / t = Σ_a χ(a) e^{at}; denominator / t = (e^{ft} - 1)/t.
        let mut num = vec![BigRational::zero(); len];
        for a in 1..=f {
            let chi = kronecker(d0, a);
            for (i, c) in num.iter_mut().enumerate() {
                *c += BigRational::from_integer(BigInt::from(chi) * num_traits::pow(BigInt::from(a), i)) / &fact[i];
            }
        }
        let den: Vec<BigRational> = (0..len)
            .map(|i| BigRational::from_integer(num_traits::pow(BigInt::from(f), i + 1)) / &fact[i + 1])
            .collect();
        let mut quot = vec![BigRational::zero(); len];
        for i in 0..len {
            let mut acc = num[i].clone();
            for j in 0..i {
                acc -= &quot[j] * &den[i - j];
            }
            quot[i] = acc / &den[0];
        }
        &quot[n] * &fact[n]
    }

    #[test]
    fn generalized_examples() {
        assert_eq!(generalized_bernoulli(2, 1).unwrap(), rat(1, 6));
        assert_eq!(generalized_bernoulli(1, 1).unwrap(), rat(1, 2));
        assert_eq!(generalized_bernoulli(2, -4).unwrap(), generating_function_oracle(2, -4));
        assert_eq!(generalized_bernoulli(1, -4).unwrap(), rat(-1, 2));
        assert_eq!(generalized_bernoulli(3, -4).unwrap(), rat(3, 2));
        assert!(generalized_bernoulli(2, -36).is_err());
        assert!(generalized_bernoulli(0, 1).is_err());
    }

    #[test]
    fn generalized_matches_generating_function() {
        for d0 in [1i64, -3, -4, 5, -7, 8, -8, 12, 13, -20] {
            for n in 1..8 {
                assert_eq!(generalized_bernoulli(n, d0).unwrap(), generating_function_oracle(n, d0), "n={n} d0={d0}");
            }
        }
    }

    #[test]
    fn zeta_at_negative_integers() {
        // -B_k(1)/k evaluated independently of l_negative's character sum.
        for (k, v) in [(1u32, rat(-1, 2)), (2, rat(-1, 12)), (4, rat(1, 120)), (6, rat(-1, 252))] {
            assert_eq!(l_negative(k, 1).unwrap(), v);
            let direct = -bernoulli_poly(k as usize, &rat(1, 1)) / BigRational::from_integer(BigInt::from(k));
            assert_eq!(direct, v);
        }
        assert_eq!(l_negative(1, -4).unwrap(), rat(1, 2));
        assert_eq!(l_negative(1, -3).unwrap(), rat(1, 3));
    }
}
