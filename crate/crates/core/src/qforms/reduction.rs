use std::collections::{BTreeSet, HashMap};

use num_integer::Roots;
use serde::Serialize;

use super::{is_discriminant, is_square, QuadraticForm};
use crate::{Error, Result};

fn nonsquare_delta(q: &QuadraticForm) -> Result<(i64, i64)> {
    let delta = q.discriminant()?;
    if delta <= 0 {
        return Err(Error::InvalidArgument(format!("{q} has non-positive discriminant {delta}")));
    }
    if is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    Ok((delta, delta.sqrt()))
}

/// Reduced means `0 < b < √Δ` and `√Δ - b < 2|a| < √Δ + b`.
///
/// With `s = ⌊√Δ⌋` and `√Δ` irrational this is `0 < b <= s` and
/// `s - b + 1 <= 2|a| <= s + b`.
pub fn is_reduced(q: &QuadraticForm) -> bool {
    let Ok((_, s)) = nonsquare_delta(q) else {
        return false;
    };
    let two_a = 2 * q.a.unsigned_abs() as i64;
    q.b > 0 && q.b <= s && two_a > s - q.b && two_a <= s + q.b
}

fn rho_with(q: &QuadraticForm, delta: i64, s: i64) -> Result<QuadraticForm> {
    if q.c == 0 {
        return Err(Error::InvalidArgument(format!("rho needs c != 0, got {q}")));
    }
    let m = 2 * q.c.unsigned_abs() as i64;
    // r ≡ -b (mod 2|c|) and √Δ - 2|c| < r < √Δ, i.e. s + 1 - m <= r <= s.
    let r = s - (s + q.b).rem_euclid(m);
    let num = r as i128 * r as i128 - delta as i128;
    let den = 4 * q.c as i128;
    debug_assert_eq!(num % den, 0);
    let c = i64::try_from(num / den).map_err(|_| Error::Overflow("rho"))?;
    Ok(QuadraticForm::new(q.c, r, c))
}

/// `[a, b, c] ↦ [c, r, (r² - Δ)/(4c)]` with `r ≡ -b (mod 2|c|)` and
/// `√Δ - 2|c| < r < √Δ`. This is `Q ∘ [[0, -1], [1, t]]` for the right `t`.
pub fn rho(q: &QuadraticForm) -> Result<QuadraticForm> {
    let (delta, s) = nonsquare_delta(q)?;
    rho_with(q, delta, s)
}

/// Iterates [`rho`] until the form is reduced.
pub fn reduce(q: &QuadraticForm) -> Result<QuadraticForm> {
    let (delta, s) = nonsquare_delta(q)?;
    let size = q.a.unsigned_abs().max(q.c.unsigned_abs()).max(1) as f64;
    let cap = (10.0 * (3.0 + size.ln() + (delta as f64).ln())).ceil() as usize;
    let mut cur = *q;
    for _ in 0..=cap {
        if is_reduced(&cur) {
            return Ok(cur);
        }
        cur = rho_with(&cur, delta, s)?;
    }
    Err(Error::ReductionCap { a: q.a, b: q.b, c: q.c, cap })
}

/// One `SL₂(ℤ)`-class of discriminant `Δ`, as its cycle of reduced forms in
/// `rho` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormClass {
    pub cycle: Vec<QuadraticForm>,
    pub delta: i64,
}

impl FormClass {
    pub fn contains(&self, q: &QuadraticForm) -> bool {
        self.cycle.contains(q)
    }

    pub fn representative(&self) -> &QuadraticForm {
        &self.cycle[0]
    }
}

fn reduced_forms(delta: i64) -> BTreeSet<QuadraticForm> {
    let s = delta.sqrt();
    let mut out = BTreeSet::new();
    for b in 1..=s {
        if (b * b - delta) % 4 != 0 {
            continue;
        }
        let n = (delta - b * b) / 4; // -ac > 0
        for t in 1..=n {
            if n % t != 0 {
                continue;
            }
            if 2 * t <= s - b || 2 * t > s + b {
                continue;
            }
            out.insert(QuadraticForm::new(t, b, -n / t));
            out.insert(QuadraticForm::new(-t, b, n / t));
        }
    }
    out
}

/// All classes of discriminant `Δ`, one per `rho`-cycle of reduced forms.
///
/// Classes are ordered by their smallest member; each cycle starts there.
pub fn enumerate_classes(delta: i64) -> Result<Vec<FormClass>> {
    if delta <= 0 || !is_discriminant(delta) {
        return Err(Error::InvalidArgument(format!("{delta} is not a positive discriminant")));
    }
    if is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    let s = delta.sqrt();
    let forms = reduced_forms(delta);
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for start in &forms {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![*start];
        seen.insert(*start);
        let mut cur = rho_with(start, delta, s)?;
        while cur != *start {
            if !forms.contains(&cur) || !seen.insert(cur) {
                return Err(Error::InconsistentClasses(delta));
            }
            cycle.push(cur);
            cur = rho_with(&cur, delta, s)?;
        }
        classes.push(FormClass { cycle, delta });
    }
    Ok(classes)
}

/// Index of the class containing `reduce(q)`.
pub fn class_of(q: &QuadraticForm, classes: &[FormClass]) -> Result<usize> {
    let r = reduce(q)?;
    classes
        .iter()
        .position(|cls| cls.contains(&r))
        .ok_or_else(|| Error::InconsistentClasses(classes.first().map_or(0, |c| c.delta)))
}

/// Classes of one discriminant with a hash index from reduced form to class.
#[derive(Clone, Debug)]
pub struct ClassTable {
    delta: i64,
    classes: Vec<FormClass>,
    index: HashMap<QuadraticForm, usize>,
}

impl ClassTable {
    pub fn new(delta: i64) -> Result<Self> {
        let classes = enumerate_classes(delta)?;
        let index = classes.iter().enumerate().flat_map(|(i, cls)| cls.cycle.iter().map(move |q| (*q, i))).collect();
        Ok(Self { delta, classes, index })
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn classes(&self) -> &[FormClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, q: &QuadraticForm) -> Result<usize> {
        let r = reduce(q)?;
        self.index.get(&r).copied().ok_or(Error::InconsistentClasses(self.delta))
    }

    /// Index of `-A` for class `idx`.
    pub fn negated(&self, idx: usize) -> Result<usize> {
        self.class_of(&self.classes[idx].representative().negated())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qforms::{sl2_act, Sl2Matrix};

    fn qf(a: i64, b: i64, c: i64) -> QuadraticForm {
        QuadraticForm::new(a, b, c)
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&qf(1, 0, -3)).unwrap(), qf(-3, 0, 1));
        assert_eq!(rho(&qf(-3, 0, 1)).unwrap(), qf(1, 2, -2));
        assert_eq!(rho(&qf(1, 2, -2)).unwrap(), qf(-2, 2, 1));
        assert!(matches!(rho(&qf(1, 2, 0)), Err(Error::SquareDiscriminant(4))));
    }

    #[test]
    fn rho_is_an_sl2_move() {
        let q = qf(7, 11, -5);
        let r = rho(&q).unwrap();
        let t = (r.b + q.b) / (2 * q.c);
        assert_eq!(sl2_act(&q, &Sl2Matrix::new(0, -1, 1, t)).unwrap(), r);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&qf(1, 2, -2)).unwrap(), qf(1, 2, -2));
        assert_eq!(reduce(&qf(1, 0, -3)).unwrap(), qf(1, 2, -2));
        assert_eq!(reduce(&qf(-1, 0, 3)).unwrap(), qf(-1, 2, 2));
        assert!(reduce(&qf(1, 0, -4)).is_err());
    }

    #[test]
    fn classes_of_12_and_5() {
        let cls = enumerate_classes(12).unwrap();
        assert_eq!(cls.len(), 2);
        let sets: Vec<BTreeSet<_>> = cls.iter().map(|c| c.cycle.iter().copied().collect()).collect();
        assert!(sets.contains(&[qf(1, 2, -2), qf(-2, 2, 1)].into_iter().collect()));
        assert!(sets.contains(&[qf(-1, 2, 2), qf(2, 2, -1)].into_iter().collect()));

        let five = enumerate_classes(5).unwrap();
        assert_eq!(five.len(), 1);
        assert!(five[0].contains(&qf(1, 1, -1)));
        assert!(enumerate_classes(9).is_err());
        assert!(enumerate_classes(7).is_err());
    }

    #[test]
    fn class_of_examples() {
        let cls = enumerate_classes(12).unwrap();
        let i = class_of(&qf(1, 2, -2), &cls).unwrap();
        assert!(cls[i].contains(&qf(-2, 2, 1)));
        assert_eq!(class_of(&qf(1, 0, -3), &cls).unwrap(), i);
        let j = class_of(&qf(-1, 0, 3), &cls).unwrap();
        assert_ne!(i, j);
        assert!(cls[j].contains(&qf(2, 2, -1)));
    }

    #[test]
    fn rho_permutes_reduced_forms() {
        for delta in [5i64, 8, 12, 13, 20, 21, 28, 45, 60, 108, 145, 229] {
            let forms = reduced_forms(delta);
            let images: BTreeSet<_> = forms.iter().map(|q| rho(q).unwrap()).collect();
            assert_eq!(images, forms, "delta={delta}");
            let classes = enumerate_classes(delta).unwrap();
            let union: BTreeSet<_> = classes.iter().flat_map(|c| c.cycle.iter().copied()).collect();
            assert_eq!(union, forms);
            assert_eq!(classes.iter().map(|c| c.cycle.len()).sum::<usize>(), forms.len());
        }
    }

    #[test]
    fn equivalent_forms_share_a_class() {
        let table = ClassTable::new(60).unwrap();
        for cls in table.classes() {
            let q = *cls.representative();
            let idx = table.class_of(&q).unwrap();
            let mut m = Sl2Matrix::IDENTITY;
            for step in
                [Sl2Matrix::T, Sl2Matrix::S, Sl2Matrix::T, Sl2Matrix::T, Sl2Matrix::T, Sl2Matrix::S, Sl2Matrix::T]
            {
                m = m.mul(&step);
                assert_eq!(table.class_of(&sl2_act(&q, &m).unwrap()).unwrap(), idx);
            }
        }
    }
}
