//! Square roots of `Δ` modulo `4n` and the character-weighted count
//! `N_{D,d}(n) = Σ_{0<=b<2n, b²≡Δ (4n)} χ_d([-n, b, (Δ-b²)/4n])`.

use crate::arith::factorize;
use crate::qforms::{DiscriminantPair, GenusCharacter, QuadraticForm};
use crate::{Error, Result};

/// `#{b mod n : b² ≡ Δ (mod n)}` by direct scan.
pub fn count_roots_mod(delta: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be >= 1".into()));
    }
    let m = n as i128;
    let target = (delta as i128).rem_euclid(m);
    Ok((0..n).filter(|&b| (b as i128 * b as i128) % m == target).count() as u64)
}

fn mod_pow(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m)
}

/// Tonelli–Shanks for an odd prime `p` and a quadratic residue `a ≢ 0`.
fn sqrt_mod_prime(a: u128, p: u128) -> Option<u128> {
    let a = a % p;
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u128;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = mod_pow(c, 1u128 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// Roots of `x² ≡ Δ (mod p^e)` in `[0, p^e)`.
fn sqrt_mod_prime_power(delta: i64, p: u64, e: u32) -> Vec<u128> {
    let p128 = p as u128;
    let delta_mod_p = (delta as i128).rem_euclid(p as i128) as u128;
    let newton = p != 2 && delta_mod_p != 0;
    let mut roots: Vec<u128> = vec![0];
    let mut pk: u128 = 1;
    for level in 0..e {
        let next = pk * p128;
        let target = (delta as i128).rem_euclid(next as i128) as u128;
        let mut lifted = Vec::new();
        if newton && level == 0 && p > 1024 {
            if let Some(r) = sqrt_mod_prime(delta_mod_p, p128) {
                lifted.push(r);
                lifted.push(p128 - r);
            }
        } else if newton && level > 0 {
            // Unique lift: x - (x² - Δ)/(2x) mod p^{level+1}.
            for &x in &roots {
                let fx = ((x * x % next) + next - target) % next;
                let inv = mod_inverse((2 * x % next) as i128, next as i128) as u128;
                lifted.push((x + next - fx * inv % next) % next);
            }
        } else {
            for &r in &roots {
                for t in 0..p128 {
                    let x = r + t * pk;
                    if x * x % next == target {
                        lifted.push(x);
                    }
                }
            }
        }
        lifted.sort_unstable();
        lifted.dedup();
        roots = lifted;
        pk = next;
        if roots.is_empty() {
            break;
        }
    }
    roots
}

/// All `b` in `[0, 2n)` with `b² ≡ Δ (mod 4n)`, in increasing order.
pub fn roots_mod_4n(delta: i64, n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let m = (n as u128) * 4;
    if m > u64::MAX as u128 / 4 {
        return Err(Error::Overflow("4n"));
    }
    let mut f: Vec<(u64, u32)> = factorize(n)?.factors().to_vec();
    match f.first_mut() {
        Some((2, e)) => *e += 2,
        _ => f.insert(0, (2, 2)),
    }
    let mut acc: Vec<u128> = vec![0];
    let mut modulus: u128 = 1;
    for (p, e) in f {
        let local = sqrt_mod_prime_power(delta, p, e);
        if local.is_empty() {
            return Ok(Vec::new());
        }
        let pe = (p as u128).pow(e);
        let inv = mod_inverse((modulus % pe) as i128, pe as i128) as u128;
        let mut combined = Vec::with_capacity(acc.len() * local.len());
        for &r1 in &acc {
            for &r2 in &local {
                let diff = (r2 + pe - r1 % pe) % pe;
                combined.push(r1 + modulus * (diff * inv % pe));
            }
        }
        acc = combined;
        modulus *= pe;
    }
    let half = 2 * n as u128;
    let mut out: Vec<u64> = acc.into_iter().filter(|&b| b < half).map(|b| b as u64).collect();
    out.sort_unstable();
    Ok(out)
}

/// The form `[-n, b, (Δ - b²)/(4n)]` indexed by a root `b`.
fn leading_form(delta: i64, n: u64, b: u64) -> Result<QuadraticForm> {
    let n128 = n as i128;
    let b128 = b as i128;
    let c = (delta as i128 - b128 * b128) / (4 * n128);
    let conv = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("N_{D,d} form"));
    Ok(QuadraticForm::new(conv(-n128)?, conv(b128)?, conv(c)?))
}

/// Evaluates `N_{D,d}(n)` for one pair, sharing a genus-character cache.
#[derive(Debug)]
pub struct NddCounter {
    pair: DiscriminantPair,
    chi: GenusCharacter,
}

impl NddCounter {
    pub fn new(pair: DiscriminantPair) -> Result<Self> {
        Ok(Self { pair, chi: GenusCharacter::new(pair.d())? })
    }

    pub fn pair(&self) -> &DiscriminantPair {
        &self.pair
    }

    pub fn n(&self, n: u64) -> Result<i64> {
        let delta = self.pair.delta();
        let mut total = 0i64;
        for b in roots_mod_4n(delta, n)? {
            total += self.chi.eval_unchecked(&leading_form(delta, n, b)?)? as i64;
        }
        Ok(total)
    }
}

/// `N_{D,d}(n)`.
pub fn n_dd(pair: &DiscriminantPair, n: u64) -> Result<i64> {
    NddCounter::new(*pair)?.n(n)
}

/// `N_{D,d}(n)` by the literal loop over `0 <= b <= 2n-1`. Reference
/// implementation for small `n`.
pub fn n_dd_direct(pair: &DiscriminantPair, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let chi = GenusCharacter::new(pair.d())?;
    let delta = pair.delta() as i128;
    let four_n = 4 * n as i128;
    let mut total = 0i64;
    for b in 0..2 * n {
        let b2 = b as i128 * b as i128;
        if (b2 - delta) % four_n == 0 {
            total += chi.eval(&leading_form(pair.delta(), n, b)?)? as i64;
        }
    }
    Ok(total)
}
