//! Reference implementations used only by tests. Deliberately naive and
//! written without the library's arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const PI: &str =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow_mod(mut b: i128, mut e: u64, m: i128) -> i128 {
    let mut acc = 1i128;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn primes_of(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Kronecker symbol from Euler's criterion on each prime factor.
pub fn kron(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut acc = if n < 0 && d < 0 { -1 } else { 1 };
    for (p, e) in primes_of(n.unsigned_abs()) {
        let s: i64 = if p == 2 {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            match pow_mod(d as i128, (p - 1) / 2, p as i128) {
                0 => 0,
                1 => 1,
                _ => -1,
            }
        };
        acc *= s.pow(e);
    }
    acc
}

pub fn squarefree(n: u64) -> bool {
    primes_of(n).iter().all(|&(_, e)| e == 1)
}

pub fn fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => matches!((d / 4).rem_euclid(4), 2 | 3) && squarefree((d / 4).unsigned_abs()),
        _ => false,
    }
}

/// `χ_d([a,b,c])` from a represented value coprime to `d`.
pub fn chi(d: i64, a: i64, b: i64, c: i64) -> i64 {
    if a.gcd(&b).gcd(&c).gcd(&d) > 1 {
        return 0;
    }
    for x in 0..12i128 {
        for y in -12..12i128 {
            if x.gcd(&y) != 1 {
                continue;
            }
            let m = a as i128 * x * x + b as i128 * x * y + c as i128 * y * y;
            if m != 0 && m.gcd(&(d as i128)) == 1 {
                return kron(d, m as i64);
            }
        }
    }
    panic!("no value of [{a},{b},{c}] coprime to {d}");
}

/// `N_{D,d}(n)` from the defining sum over `b mod 2n`.
pub fn n_ref(delta: i64, d: i64, n: i64) -> i64 {
    (0..2 * n).filter(|b| (b * b - delta) % (4 * n) == 0).map(|b| chi(d, -n, b, (delta - b * b) / (4 * n))).sum()
}

/// `F_{k,D,d}(u/q)` by enumerating every form with `a < 0 < Q(u/q)`.
pub fn f_ref(k: u32, delta: i64, d: i64, u: i64, q: i64) -> BigRational {
    let root = (delta as f64).sqrt().ceil() as i64 + 1;
    let mut total = BigInt::zero();
    for na in 1..=delta * q * q / 4 {
        let a = -na;
        let centre = 2 * na * u / q;
        for b in centre - root - 1..=centre + root + 1 {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let v = a as i128 * (u * u) as i128 + b as i128 * (u * q) as i128 + c as i128 * (q * q) as i128;
            if v <= 0 {
                continue;
            }
            let s = chi(d, a, b, c);
            if s != 0 {
                total += BigInt::from(s) * BigInt::from(v).pow(k - 1);
            }
        }
    }
    BigRational::new(total, BigInt::from(q).pow(2 * (k - 1)))
}

fn binom(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let s: BigRational = (0..m).map(|j| BigRational::from_integer(binom(m + 1, j)) * &b[j]).sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn bernoulli_poly(b: &[BigRational], n: usize, x: &BigRational) -> BigRational {
    (0..=n).map(|j| BigRational::from_integer(binom(n, j)) * &b[j] * num_traits::pow(x.clone(), n - j)).sum()
}

/// `L(1-k, χ_{D0})` from `B_{k,χ} = F^{k-1} Σ_{a=1}^{F} χ(a) B_k(a/F)`.
pub fn l_one_minus(k: u32, d0: i64) -> BigRational {
    let f = d0.abs();
    let b = bernoulli_table(k as usize);
    let mut s = BigRational::zero();
    for a in 1..=f {
        let c = kron(d0, a);
        if c != 0 {
            s += BigRational::from_integer(c.into()) * bernoulli_poly(&b, k as usize, &r(a, f));
        }
    }
    let bk = s * BigRational::from_integer(BigInt::from(f).pow(k - 1));
    -bk / BigRational::from_integer(k.into())
}

pub fn zeta_one_minus(two_k: u32) -> BigRational {
    let b = bernoulli_table(two_k as usize);
    -b[two_k as usize].clone() / BigRational::from_integer(two_k.into())
}

fn sigma(m: u32, n: u64) -> BigInt {
    (1..=n).filter(|t| n.is_multiple_of(*t)).map(|t| BigInt::from(t).pow(m)).sum()
}

fn mobius(n: u64) -> i64 {
    let f = primes_of(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Cohen's `H(k, N)` straight from its definition.
pub fn cohen(k: u32, n: u64) -> BigRational {
    if n == 0 {
        return zeta_one_minus(2 * k);
    }
    let signed = if k.is_multiple_of(2) { n as i64 } else { -(n as i64) };
    if matches!(signed.rem_euclid(4), 2 | 3) {
        return BigRational::zero();
    }
    let mut f = (n as f64).sqrt() as i64 + 1;
    while f > 0 && !(signed % (f * f) == 0 && fundamental(signed / (f * f))) {
        f -= 1;
    }
    let d0 = signed / (f * f);
    let mut sum = BigInt::zero();
    for rr in 1..=f {
        if f % rr == 0 {
            let term = BigInt::from(mobius(rr as u64) * kron(d0, rr))
                * BigInt::from(rr).pow(k - 1)
                * sigma(2 * k - 1, (f / rr) as u64);
            sum += term;
        }
    }
    l_one_minus(k, d0) * BigRational::from_integer(sum)
}

/// Class number of positive definite forms of discriminant `-n`, weighting
/// `[a,0,a]` by 1/2 and `[a,a,a]` by 1/3.
pub fn hurwitz(n: i64) -> BigRational {
    let mut total = BigRational::zero();
    for a in 1..=n {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && (b == -a || a == c)) {
                continue;
            }
            total += if b == 0 && a == c {
                r(1, 2)
            } else if a == b && b == c {
                r(1, 3)
            } else {
                BigRational::one()
            };
        }
    }
    total
}

/// `Σ_{j>=0} (-1)^j a_j` by the alternating-series acceleration with
/// integer weights from `(3+√8)^n`.
pub fn alternating(a: impl Fn(u64) -> BigRational, n: u64) -> BigRational {
    let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
    for _ in 0..n {
        let t2 = BigInt::from(6) * &t1 - &t0;
        t0 = t1;
        t1 = t2;
    }
    let d = BigRational::from_integer(t0);
    let mut b = -BigRational::one();
    let mut c = -d.clone();
    let mut s = BigRational::zero();
    let n_i = n as i64;
    for j in 0..n {
        c = &b - &c;
        s += &c * a(j);
        let ji = j as i64;
        b *= r(2 * (ji + n_i) * (ji - n_i), (2 * ji + 1) * (ji + 1));
    }
    s / d
}

pub fn abs_diff_f64(x: &BigRational, y: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    (x - y).abs().to_f64().unwrap()
}

/// Adaptive Simpson, written out again for test use.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    let left = (m - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + m)) + f(m));
    let right = (b - m) / 6.0 * (f(m) + 4.0 * f(0.5 * (m + b)) + f(b));
    if depth == 0 || (left + right - whole).abs() < 15.0 * eps {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, eps / 2.0, depth - 1) + simpson(f, m, b, eps / 2.0, depth - 1)
    }
}
