use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// The form `[a, b, c] = a x² + b xy + c y²`.
///
/// Coefficients are `i64`; every constructor path that could overflow goes
/// through checked 128-bit arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// `b² - 4ac`, computed in 128 bits.
    pub fn discriminant_wide(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    pub fn discriminant(&self) -> Result<i64> {
        i64::try_from(self.discriminant_wide()).map_err(|_| Error::Overflow("discriminant"))
    }

    /// `[-a, -b, -c]`.
    pub fn negated(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }

    /// `Q(x, y)` for integer arguments.
    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// `Q(x) = a x² + b x + c` at a rational point.
    pub fn value_at(&self, x: &BigRational) -> BigRational {
        let a = BigRational::from_integer(BigInt::from(self.a));
        let b = BigRational::from_integer(BigInt::from(self.b));
        let c = BigRational::from_integer(BigInt::from(self.c));
        (a * x + b) * x + c
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Serialized as a JSON triple of decimal strings.
impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        seq.serialize_element(&self.a.to_string())?;
        seq.serialize_element(&self.b.to_string())?;
        seq.serialize_element(&self.c.to_string())?;
        seq.end()
    }
}

/// `[[alpha, beta], [gamma, delta]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2Matrix {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix::new(1, 0, 0, 1);
    pub const T: Sl2Matrix = Sl2Matrix::new(1, 1, 0, 1);
    pub const S: Sl2Matrix = Sl2Matrix::new(0, -1, 1, 0);

    pub const fn new(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        Self { alpha, beta, gamma, delta }
    }

    pub fn det(&self) -> i128 {
        self.alpha as i128 * self.delta as i128 - self.beta as i128 * self.gamma as i128
    }

    pub fn mul(&self, o: &Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix::new(
            self.alpha * o.alpha + self.beta * o.gamma,
            self.alpha * o.beta + self.beta * o.delta,
            self.gamma * o.alpha + self.delta * o.gamma,
            self.gamma * o.beta + self.delta * o.delta,
        )
    }
}

/// `(Q∘M)(x, y) = Q(αx + βy, γx + δy)`.
pub fn sl2_act(q: &QuadraticForm, m: &Sl2Matrix) -> Result<QuadraticForm> {
    if m.det() != 1 {
        return Err(Error::InvalidArgument(format!("matrix determinant is {}, expected 1", m.det())));
    }
    let (a, b, c) = (q.a as i128, q.b as i128, q.c as i128);
    let (al, be, ga, de) = (m.alpha as i128, m.beta as i128, m.gamma as i128, m.delta as i128);
    let na = a * al * al + b * al * ga + c * ga * ga;
    let nb = 2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de;
    let nc = a * be * be + b * be * de + c * de * de;
    let conv = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("sl2_act"));
    Ok(QuadraticForm::new(conv(na)?, conv(nb)?, conv(nc)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn action_examples() {
        let q = QuadraticForm::new(1, 0, -3);
        assert_eq!(sl2_act(&q, &Sl2Matrix::IDENTITY).unwrap(), q);
        let t = sl2_act(&q, &Sl2Matrix::T).unwrap();
        assert_eq!(t, QuadraticForm::new(1, 2, -2));
        assert_eq!(sl2_act(&t, &Sl2Matrix::S).unwrap(), QuadraticForm::new(-2, -2, 1));
        assert!(sl2_act(&q, &Sl2Matrix::new(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn negative_identity_acts_trivially() {
        let q = QuadraticForm::new(3, -7, 2);
        assert_eq!(sl2_act(&q, &Sl2Matrix::new(-1, 0, 0, -1)).unwrap(), q);
    }

    #[test]
    fn serializes_as_string_triple() {
        let s = serde_json::to_string(&QuadraticForm::new(-1, 0, 3)).unwrap();
        assert_eq!(s, r#"["-1","0","3"]"#);
    }

    pub(crate) fn sl2_strategy() -> impl Strategy<Value = Sl2Matrix> {
        (-20i64..=20, -20i64..=20, -20i64..=20).prop_filter_map("need gcd(alpha, gamma) = 1", |(al, ga, t)| {
            // Complete (alpha, gamma) to a unimodular matrix via extended gcd.
            let (g, x, y) = ext_gcd(al, ga);
            if g != 1 {
                return None;
            }
            // alpha*delta - beta*gamma = 1 with delta = x, beta = -y, shifted by t.
            Some(Sl2Matrix::new(al, -y + t * al, ga, x + t * ga))
        })
    }

    fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            if a < 0 {
                (-a, -1, 0)
            } else {
                (a, 1, 0)
            }
        } else {
            let (g, x, y) = ext_gcd(b, a % b);
            (g, y, x - (a / b) * y)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn discriminant_invariant(a in -20i64..=20, b in -20i64..=20, c in -20i64..=20, m in sl2_strategy()) {
            prop_assert_eq!(m.det(), 1);
            let q = QuadraticForm::new(a, b, c);
            let r = sl2_act(&q, &m).unwrap();
            prop_assert_eq!(r.discriminant_wide(), q.discriminant_wide());
        }
    }
}
