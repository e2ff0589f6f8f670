//! Exact evaluation of `F_{k,D,d}(x)` and its class pieces at rational `x`.
//!
//! For `x = u/q` in lowest terms, every form with `a < 0 < Q(x)` has
//! `q² Q(x)` a positive integer, so `Q(x) >= 1/q²`, while `Q(x) <= Δ/(4|a|)`.
//! Hence `|a| <= q²Δ/4` and the sum is finite. For each `a` the admissible
//! `b` satisfy `(2ax + b)² < Δ`, an interval of length `2√Δ`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::qforms::{is_square, ClassTable, DiscriminantPair, GenusCharacter, QuadraticForm};
use crate::{Error, Result};

/// Integer accumulator that spills into a `BigInt` on overflow.
#[derive(Default)]
struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    fn add_term(&mut self, weight: i64, base: i128, exp: u32) {
        let term = base.checked_pow(exp).and_then(|t| t.checked_mul(weight as i128));
        match term.and_then(|t| self.small.checked_add(t)) {
            Some(s) => self.small = s,
            None => self.big += BigInt::from(weight) * num_traits::pow(BigInt::from(base), exp as usize),
        }
    }

    fn total(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

/// Splits `x` into `(u, q)` with `q > 0` as machine integers.
pub(crate) fn rational_parts(x: &BigRational) -> Result<(i64, i64)> {
    let u = x.numer().to_i64().ok_or(Error::Overflow("numerator of x"))?;
    let q = x.denom().to_i64().ok_or(Error::Overflow("denominator of x"))?;
    Ok((u, q))
}

/// Calls `visit(Q, q²·Q(x))` for every form of discriminant `delta` with
/// `a < 0 < Q(x)`.
pub fn for_each_positive_form(
    delta: i64,
    x: &BigRational,
    mut visit: impl FnMut(&QuadraticForm, i128) -> Result<()>,
) -> Result<()> {
    if delta <= 0 {
        return Err(Error::InvalidArgument(format!("discriminant {delta} must be positive")));
    }
    let (u, q) = rational_parts(x)?;
    let (u, q, d) = (u as i128, q as i128, delta as i128);
    let a_max = q * q * d / 4;
    let s = delta.sqrt() as i128;
    let bound = d * q * q;
    let parity = d.rem_euclid(2);
    for t in 1..=a_max {
        // b near 2tu/q.
        let center = (2 * t * u).div_euclid(q);
        let mut b = center - s - 1;
        if b.rem_euclid(2) != parity {
            b += 1;
        }
        while b <= center + s + 1 {
            let w = b * q - 2 * t * u; // q(2ax + b)
            if w * w < bound && (b * b - d) % (4 * t) == 0 {
                let c = (d - b * b) / (4 * t); // (b² - Δ)/(4a) with a = -t
                let value = -t * u * u + b * u * q + c * q * q;
                debug_assert!(value > 0);
                let conv = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("form coefficients"));
                let form = QuadraticForm::new(conv(-t)?, conv(b)?, conv(c)?);
                visit(&form, value)?;
            }
            b += 2;
        }
    }
    Ok(())
}

fn weighted_sum(
    delta: i64,
    k: u32,
    x: &BigRational,
    mut weight: impl FnMut(&QuadraticForm) -> Result<i8>,
) -> Result<BigRational> {
    let (_, q) = rational_parts(x)?;
    let mut acc = Accumulator::default();
    for_each_positive_form(delta, x, |form, value| {
        let w = weight(form)?;
        if w != 0 {
            acc.add_term(w as i64, value, k - 1);
        }
        Ok(())
    })?;
    let den = num_traits::pow(BigInt::from(q), 2 * (k as usize - 1));
    Ok(BigRational::new(acc.total(), den))
}

fn check_k_one(pair: &DiscriminantPair) -> Result<()> {
    if pair.k() == 1 && is_square(pair.delta()) {
        return Err(Error::SquareDiscriminant(pair.delta()));
    }
    Ok(())
}

/// `F_{k,D,d}(x) = Σ_{Q ∈ 𝔔_{Dd}, a<0<Q(x)} χ_d(Q) Q(x)^{k-1}`.
///
/// For `k = 1` the discriminant `Dd` must not be a square.
pub fn eval_f(pair: &DiscriminantPair, x: &BigRational) -> Result<BigRational> {
    let chi = GenusCharacter::new(pair.d())?;
    eval_f_with(pair, &chi, x)
}

/// [`eval_f`] with a caller-supplied character cache.
pub fn eval_f_with(pair: &DiscriminantPair, chi: &GenusCharacter, x: &BigRational) -> Result<BigRational> {
    check_k_one(pair)?;
    if chi.d() != pair.d() {
        return Err(Error::InvalidArgument("character does not match pair".into()));
    }
    weighted_sum(pair.delta(), pair.k(), x, |q| chi.eval_unchecked(q))
}

/// The unweighted sum `Σ_{a<0<Q(x)} Q(x)^{k-1}` over all forms of
/// discriminant `delta`; equals `F_{k,D,1}` when `delta = D`.
pub fn eval_f_unweighted(k: u32, delta: i64, x: &BigRational) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if k == 1 && is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    weighted_sum(delta, k, x, |_| Ok(1))
}

/// `F*_{k,𝒜}(x)` for every class `𝒜` of the table at once.
pub fn class_sums(k: u32, table: &ClassTable, x: &BigRational) -> Result<Vec<BigRational>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let (_, q) = rational_parts(x)?;
    let mut accs: Vec<Accumulator> = (0..table.len()).map(|_| Accumulator::default()).collect();
    for_each_positive_form(table.delta(), x, |form, value| {
        let idx = table.class_of(form)?;
        accs[idx].add_term(1, value, k - 1);
        Ok(())
    })?;
    let den = BigInt::from(q).pow(2 * (k - 1));
    Ok(accs.into_iter().map(|a| BigRational::new(a.total(), den.clone())).collect())
}

/// `F*_{k,𝒜}(x) = Σ_{Q ∈ 𝒜, a<0<Q(x)} Q(x)^{k-1}`.
pub fn eval_f_star(k: u32, class_idx: usize, table: &ClassTable, x: &BigRational) -> Result<BigRational> {
    if class_idx >= table.len() {
        return Err(Error::InvalidArgument(format!("class index {class_idx} out of range")));
    }
    Ok(class_sums(k, table, x)?.swap_remove(class_idx))
}

/// `F_{k,𝒜}(x) = F*_{k,𝒜}(x) + (-1)^k F*_{k,-𝒜}(x)`.
pub fn eval_f_sym(k: u32, class_idx: usize, table: &ClassTable, x: &BigRational) -> Result<BigRational> {
    if class_idx >= table.len() {
        return Err(Error::InvalidArgument(format!("class index {class_idx} out of range")));
    }
    let sums = class_sums(k, table, x)?;
    let neg = table.negated(class_idx)?;
    Ok(if k.is_multiple_of(2) { &sums[class_idx] + &sums[neg] } else { &sums[class_idx] - &sums[neg] })
}

/// `χ_d(𝒜)` for each class of discriminant `Dd`, from its first member.
pub fn class_characters(pair: &DiscriminantPair, table: &ClassTable) -> Result<Vec<i8>> {
    let chi = GenusCharacter::new(pair.d())?;
    table.classes().iter().map(|cls| chi.eval(cls.representative())).collect()
}

/// The finite sums `Σ χ_d([a,b,c])` over `b² - 4ac = Δ` with `a < 0 < c`
/// and with `c < 0 < a`, in that order.
pub fn sign_change_sums(pair: &DiscriminantPair) -> Result<(i64, i64)> {
    let delta = pair.delta();
    if is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    let chi = GenusCharacter::new(pair.d())?;
    let s = delta.sqrt();
    let (mut neg_a, mut neg_c) = (0i64, 0i64);
    for b in -s..=s {
        if (b * b - delta) % 4 != 0 {
            continue;
        }
        let n = (delta - b * b) / 4; // -ac > 0
        for t in 1..=n {
            if n % t != 0 {
                continue;
            }
            neg_a += chi.eval(&QuadraticForm::new(-t, b, n / t))? as i64;
            neg_c += chi.eval(&QuadraticForm::new(t, b, -n / t))? as i64;
        }
    }
    Ok((neg_a, neg_c))
}

/// Midpoint rule `(1/S) Σ_j F(j/S + 1/(2S))`, exact.
pub fn midpoint_average(pair: &DiscriminantPair, samples: u64) -> Result<BigRational> {
    use rayon::prelude::*;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    let chi = GenusCharacter::new(pair.d())?;
    let values: Vec<Result<BigRational>> = (0..samples)
        .into_par_iter()
        .map(|j| {
            let x = BigRational::new(BigInt::from(2 * j + 1), BigInt::from(2 * samples));
            eval_f_with(pair, &chi, &x)
        })
        .collect();
    let mut sum = BigRational::zero();
    for v in values {
        sum += v?;
    }
    Ok(sum / BigRational::from_integer(BigInt::from(samples)))
}
