/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut n = n as u128;
    let mut a = (a as i128).rem_euclid(n as i128) as u128;
    let mut result = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)`.
///
/// Zero and negative `n` follow the usual extension: `(d/0)` is 1 for
/// `d = ±1` and 0 otherwise, `(d/-1)` is the sign of `d`, and
/// `(d/n) = (d/-1)(d/|n|)` for `n < 0`.
pub fn kronecker(d: i64, n: i64) -> i8 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = if n < 0 && d < 0 { -1i8 } else { 1 };
    let mut m = n.unsigned_abs();
    let twos = m.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        m >>= twos;
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(d, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Legendre symbol by Euler's criterion, for odd primes.
    fn euler_criterion(a: i64, p: u64) -> i8 {
        let a = a.rem_euclid(p as i64) as u64;
        if a == 0 {
            return 0;
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn examples() {
        assert_eq!(kronecker(-3, 1), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-4, 0), 0);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(1, 2), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(-4, 3), -1);
    }

    #[test]
    fn legendre_agrees_with_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 97, 101] {
            for a in -60..60 {
                assert_eq!(kronecker(a, p as i64), euler_criterion(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn jacobi_is_product_of_legendre() {
        for (n, primes) in [(15u64, [3u64, 5]), (77, [7, 11]), (91, [7, 13])] {
            for a in -50..50 {
                let expected: i8 = primes.iter().map(|&p| euler_criterion(a, p)).product();
                assert_eq!(jacobi(a, n), expected);
            }
        }
    }
}
