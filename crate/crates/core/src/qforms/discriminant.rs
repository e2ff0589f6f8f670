use num_integer::Roots;
use serde::Serialize;

use crate::arith::factorize;
use crate::{Error, Result};

pub fn is_discriminant(n: i64) -> bool {
    matches!(n.rem_euclid(4), 0 | 1)
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = n.sqrt();
        r * r == n
    }
}

fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factorize(n.unsigned_abs()).map(|f| f.iter().all(|(_, e)| e == 1)).unwrap_or(false)
}

/// True for 1, squarefree `d ≡ 1 (mod 4)`, and `4m` with squarefree
/// `m ≡ 2, 3 (mod 4)`.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => matches!((d / 4).rem_euclid(4), 2 | 3) && is_squarefree(d / 4),
        _ => false,
    }
}

/// `D = D0 · f²` with `D0` fundamental.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantFactorization {
    pub d0: i64,
    pub f: u64,
}

pub fn factor_discriminant(big_d: i64) -> Result<DiscriminantFactorization> {
    if big_d == 0 || !is_discriminant(big_d) {
        return Err(Error::NotDiscriminant(big_d));
    }
    let mut f = big_d.unsigned_abs().sqrt();
    while f >= 1 {
        let f2 = (f * f) as i64;
        if big_d % f2 == 0 && is_fundamental(big_d / f2) {
            return Ok(DiscriminantFactorization { d0: big_d / f2, f });
        }
        f -= 1;
    }
    unreachable!("every nonzero discriminant has a fundamental part")
}

/// Parameters `(k, D, d)` with `d` fundamental and
/// `sign d = sign D = (-1)^k`, so that `Δ = Dd > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiscriminantPair {
    k: u32,
    #[serde(rename = "D")]
    big_d: i64,
    d: i64,
}

impl DiscriminantPair {
    pub fn new(k: u32, big_d: i64, d: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        if big_d == 0 || !is_discriminant(big_d) {
            return Err(Error::NotDiscriminant(big_d));
        }
        if !is_fundamental(d) {
            return Err(Error::NotFundamental(d));
        }
        let want = if k.is_multiple_of(2) { 1 } else { -1 };
        if big_d.signum() != want || d.signum() != want {
            return Err(Error::SignConstraint { k, big_d, d });
        }
        big_d.checked_mul(d).ok_or(Error::Overflow("D*d"))?;
        Ok(Self { k, big_d, d })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn big_d(&self) -> i64 {
        self.big_d
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `Δ = D·d`, always positive.
    pub fn delta(&self) -> i64 {
        self.big_d * self.d
    }

    /// `(-1)^k`.
    pub fn sign(&self) -> i64 {
        if self.k.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn factor_big_d(&self) -> DiscriminantFactorization {
        factor_discriminant(self.big_d).expect("validated discriminant")
    }
}
