use std::sync::atomic::{AtomicI8, Ordering};

use num_integer::Integer;

use super::{is_discriminant, is_fundamental, QuadraticForm};
use crate::arith::kronecker;
use crate::{Error, Result};

const UNKNOWN: i8 = i8::MIN;
/// Largest `|d|³` for which the residue table is allocated.
const MAX_TABLE: u64 = 1 << 21;

/// Genus character `χ_d` on forms whose discriminant is `Dd`.
///
/// `χ_d(Q)` is 0 when `gcd(a, b, c, d) > 1`, and otherwise `(d/r)` for any
/// `r` coprime to `d` represented by `Q`. Here `r` runs over the unit
/// residues `Q(x, y) mod |d|`, `0 <= x, y < |d|`, and all of them must give
/// the same symbol. Since the value depends only on `(a, b, c) mod |d|`,
/// results are memoized per residue triple.
#[derive(Debug)]
pub struct GenusCharacter {
    d: i64,
    modulus: u64,
    /// `kronecker(d, r)` for units `r mod |d|`, 0 otherwise.
    unit_symbol: Vec<i8>,
    table: Option<Vec<AtomicI8>>,
}

impl GenusCharacter {
    pub fn new(d: i64) -> Result<Self> {
        Self::build(d, true)
    }

    fn build(d: i64, with_table: bool) -> Result<Self> {
        if !is_fundamental(d) {
            return Err(Error::NotFundamental(d));
        }
        let modulus = d.unsigned_abs();
        let unit_symbol = (0..modulus).map(|r| if r.gcd(&modulus) == 1 { kronecker(d, r as i64) } else { 0 }).collect();
        let size = modulus.pow(3);
        let table = (with_table && size <= MAX_TABLE).then(|| (0..size).map(|_| AtomicI8::new(UNKNOWN)).collect());
        Ok(Self { d, modulus, unit_symbol, table })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Evaluates `χ_d(Q)`, checking that `d | disc(Q)` and that
    /// `disc(Q)/d` is a discriminant.
    pub fn eval(&self, q: &QuadraticForm) -> Result<i8> {
        let disc = q.discriminant_wide();
        let d = self.d as i128;
        if disc % d != 0 || !is_discriminant((disc / d).rem_euclid(4) as i64) {
            return Err(Error::InvalidArgument(format!(
                "discriminant {disc} of {q} is not d·D for d = {} and a discriminant D",
                self.d
            )));
        }
        self.eval_unchecked(q)
    }

    /// `χ_d(Q)` without the discriminant precondition check.
    pub fn eval_unchecked(&self, q: &QuadraticForm) -> Result<i8> {
        if self.modulus == 1 {
            return Ok(1);
        }
        let m = self.modulus as i64;
        let (ra, rb, rc) = (q.a.rem_euclid(m) as u64, q.b.rem_euclid(m) as u64, q.c.rem_euclid(m) as u64);
        let Some(table) = &self.table else {
            return self.compute(q, ra, rb, rc);
        };
        let idx = ((ra * self.modulus + rb) * self.modulus + rc) as usize;
        let cached = table[idx].load(Ordering::Relaxed);
        if cached != UNKNOWN {
            return Ok(cached);
        }
        let v = self.compute(q, ra, rb, rc)?;
        table[idx].store(v, Ordering::Relaxed);
        Ok(v)
    }

    fn compute(&self, q: &QuadraticForm, ra: u64, rb: u64, rc: u64) -> Result<i8> {
        let m = self.modulus;
        if ra.gcd(&rb).gcd(&rc).gcd(&m) > 1 {
            return Ok(0);
        }
        let mut value = 0i8;
        for x in 0..m {
            for y in 0..m {
                let r = ((ra * x % m) * x + rb * x % m * y + (rc * y % m) * y) % m;
                let s = self.unit_symbol[r as usize];
                if s == 0 {
                    continue;
                }
                if value == 0 {
                    value = s;
                } else if value != s {
                    return Err(Error::IllDefinedCharacter { d: self.d, a: q.a, b: q.b, c: q.c });
                }
            }
        }
        if value == 0 {
            // A form primitive at d always represents a unit mod |d|.
            return Err(Error::IllDefinedCharacter { d: self.d, a: q.a, b: q.b, c: q.c });
        }
        Ok(value)
    }
}

/// One-shot `χ_d(Q)`; see [`GenusCharacter`].
pub fn genus_character(d: i64, q: &QuadraticForm) -> Result<i8> {
    GenusCharacter::build(d, false)?.eval(q)
}
