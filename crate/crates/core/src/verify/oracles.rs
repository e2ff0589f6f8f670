//! Independent reference computations used by the suites.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::rat;

/// π to 100 decimal places.
pub const PI_100: &str =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

/// Hurwitz class number `H(n)` from reduced positive definite forms of
/// discriminant `-n`, with `[a,0,a]` weighted 1/2 and `[a,a,a]` weighted 1/3.
/// Zero unless `-n ≡ 0, 1 (mod 4)`.
pub fn hurwitz_class_number(n: u64) -> BigRational {
    let n = n as i64;
    let mut total = BigRational::zero();
    if !matches!((-n).rem_euclid(4), 0 | 1) {
        return total;
    }
    // |b| <= a <= c forces 3a² <= n.
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (b < 0 && (-b == a || a == c)) {
                continue;
            }
            total += if b == 0 && a == c {
                rat(1, 2)
            } else if a == b && b == c {
                rat(1, 3)
            } else {
                rat(1, 1)
            };
        }
        a += 1;
    }
    total
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    simpson_step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps, 50)
}
