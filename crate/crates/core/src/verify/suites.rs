use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::oracles::{adaptive_simpson, hurwitz_class_number, PI_100};
use super::report::CaseRecord;
use super::{SuiteParams, Theorem1Method};
use crate::arith::{
    bernoulli, bernoulli_poly, decimal_expansion, format_rational, hurwitz_zeta_numeric, kronecker, l_negative, rat,
    HighPrecisionReal,
};
use crate::qforms::{
    enumerate_classes, factor_discriminant, is_fundamental, sl2_act, ClassTable, DiscriminantPair, GenusCharacter,
    QuadraticForm, Sl2Matrix,
};
use crate::series::{
    average_f, beta_closed, class_characters, class_sums, cohen_h, euler_factor_both, eval_f_with, f_divisor_identity,
    local_data, midpoint_average, qexpansion, sign_change_sums, AverageMethod, Coefficient, NddCounter,
};
use crate::{Error, Result};

fn pair(k: u32, big_d: i64, d: i64) -> DiscriminantPair {
    DiscriminantPair::new(k, big_d, d).expect("built-in instance is valid")
}

/// The standard instance matrix.
pub fn default_matrix() -> Vec<DiscriminantPair> {
    [(2, 5, 1), (2, 8, 1), (2, 45, 5), (3, -4, -3), (3, -36, -3), (3, -3, -4), (4, 12, 1), (5, -7, -4)]
        .into_iter()
        .map(|(k, big_d, d)| pair(k, big_d, d))
        .collect()
}

/// Instances for the Euler-factor checks: the default matrix plus pairs
/// that reach every local case at the primes 2, 3, 5, 7, 11.
pub fn euler_instances() -> Vec<DiscriminantPair> {
    let mut v = default_matrix();
    v.extend(
        [(2, 20, 1), (2, 125, 1), (2, 32, 1), (2, 20, 8), (2, 125, 5), (2, 32, 8), (2, 12, 8), (3, -16, -4)]
            .into_iter()
            .map(|(k, big_d, d)| pair(k, big_d, d)),
    );
    v
}

/// Pairs with `k = 1` and non-square `Dd`.
pub fn theorem2_pairs() -> Vec<DiscriminantPair> {
    [
        (-4, -3),
        (-3, -4),
        (-7, -3),
        (-8, -3),
        (-11, -4),
        (-3, -7),
        (-4, -7),
        (-12, -4),
        (-15, -3),
        (-7, -8),
        (-20, -3),
        (-3, -8),
    ]
    .into_iter()
    .map(|(big_d, d)| pair(1, big_d, d))
    .collect()
}

/// Local case of a prime `p` for a pair, with `D = D0 f²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeCase {
    /// `p | f`.
    pub divides_f: bool,
    pub divides_d0: bool,
    pub divides_d: bool,
    pub odd: bool,
}

impl PrimeCase {
    pub fn of(pair: &DiscriminantPair, p: u64) -> Self {
        let fd = pair.factor_big_d();
        let p = p as i64;
        PrimeCase {
            divides_f: fd.f as i64 % p == 0,
            divides_d0: fd.d0 % p == 0,
            divides_d: pair.d() % p == 0,
            odd: p != 2,
        }
    }

    /// Label such as `p|f,p|d,p!D0,odd`.
    pub fn label(&self) -> String {
        let mark = |b: bool| if b { "|" } else { "!" };
        format!(
            "p{}f,p{}d,p{}D0,{}",
            mark(self.divides_f),
            mark(self.divides_d),
            mark(self.divides_d0),
            if self.odd { "odd" } else { "even" }
        )
    }

    pub fn all_labels() -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for divides_f in [false, true] {
            for divides_d0 in [false, true] {
                for divides_d in [false, true] {
                    for odd in [false, true] {
                        out.insert(PrimeCase { divides_f, divides_d0, divides_d, odd }.label());
                    }
                }
            }
        }
        out
    }
}

fn pair_json(p: &DiscriminantPair) -> Value {
    json!({"k": p.k(), "D": p.big_d(), "d": p.d()})
}

fn with(base: Value, extra: Value) -> Value {
    let mut m = match base {
        Value::Object(m) => m,
        _ => unreachable!("params are objects"),
    };
    if let Value::Object(e) = extra {
        m.extend(e);
    }
    Value::Object(m)
}

fn ints<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn tolerance_real(tol: f64, bits: u32) -> Result<HighPrecisionReal> {
    let r = BigRational::from_float(tol).ok_or_else(|| Error::InvalidArgument("tolerance".into()))?;
    Ok(HighPrecisionReal::from_rational(&r, bits))
}

fn random_rational(rng: &mut ChaCha8Rng, max_q: i64) -> BigRational {
    let q = rng.gen_range(1..=max_q);
    let u = rng.gen_range(-2 * q..=2 * q);
    BigRational::new(BigInt::from(u), BigInt::from(q))
}

// Multiplicativity of N

const PROP1_MAX: u64 = 120;

pub(super) fn prop1(_params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let per_pair: Vec<Result<Vec<CaseRecord>>> = default_matrix()
        .par_iter()
        .map(|p| {
            let counter = NddCounter::new(*p)?;
            let values: Vec<i64> =
                (1..=PROP1_MAX * PROP1_MAX).into_par_iter().map(|n| counter.n(n)).collect::<Result<_>>()?;
            let n_of = |n: u64| values[n as usize - 1];
            let sign = p.sign();
            let mut cases = vec![CaseRecord::exact(
                with(pair_json(p), json!({"check": "n_at_one"})),
                n_of(1).to_string(),
                sign.to_string(),
            )];
            for n1 in 1..=PROP1_MAX {
                let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
                for n2 in (1..=PROP1_MAX).filter(|n2| n1.gcd(n2) == 1) {
                    lhs.push(n_of(n1 * n2));
                    rhs.push(sign * n_of(n1) * n_of(n2));
                }
                cases.push(CaseRecord::exact(
                    with(pair_json(p), json!({"check": "multiplicative", "n1": n1, "n2_max": PROP1_MAX})),
                    ints(&lhs),
                    ints(&rhs),
                ));
            }
            Ok(cases)
        })
        .collect();
    flatten(per_pair)
}

fn flatten(parts: Vec<Result<Vec<CaseRecord>>>) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

// Euler factors

pub const EULER_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
pub const EULER_ORDER: usize = 10;

/// `(-1)^k N_{D,d}(p^n)` from the explicit table for `p | f`, `p | d`,
/// `p ∤ D0`, `p` odd.
pub fn table_p_divides_f_and_d(pair: &DiscriminantPair, p: u64, order: usize) -> Result<Vec<BigRational>> {
    let case = PrimeCase::of(pair, p);
    if !(case.divides_f && case.divides_d && !case.divides_d0 && case.odd) {
        return Err(Error::InvalidArgument(format!("p = {p} does not divide f and d only, or is even, for {pair:?}")));
    }
    let local = local_data(pair, p);
    let e = local.e as usize;
    let pw = |s: usize| BigInt::from(p).pow(s as u32);
    Ok((0..=order)
        .map(|n| {
            let v = if n == 0 {
                BigInt::from(1)
            } else if n <= 2 * e && n % 2 == 1 {
                BigInt::zero()
            } else if n <= 2 * e {
                pw(n / 2) - pw(n / 2 - 1)
            } else if n == 2 * e + 1 {
                BigInt::from(local.chi_d0) * pw(e)
            } else {
                BigInt::zero()
            };
            BigRational::from_integer(v)
        })
        .collect())
}

pub(super) fn prop2(_params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let instances = euler_instances();
    let jobs: Vec<(DiscriminantPair, u64)> =
        instances.iter().flat_map(|p| EULER_PRIMES.iter().map(move |&q| (*p, q))).collect();
    let mut cases: Vec<CaseRecord> = jobs
        .par_iter()
        .map(|(p, prime)| {
            let label = PrimeCase::of(p, *prime).label();
            let params =
                with(pair_json(p), json!({"check": "euler_factor", "p": prime, "order": EULER_ORDER, "case": label}));
            match euler_factor_both(p, *prime, EULER_ORDER) {
                Ok((l, r)) => CaseRecord::exact(
                    params,
                    serde_json::to_string(&l).expect("series serializes"),
                    serde_json::to_string(&r).expect("series serializes"),
                ),
                Err(e) => CaseRecord::error(params, e.to_string()),
            }
        })
        .collect();

    let table_pair = pair(3, -36, -3);
    let (lhs, _) = euler_factor_both(&table_pair, 3, EULER_ORDER)?;
    let table = table_p_divides_f_and_d(&table_pair, 3, EULER_ORDER)?;
    cases.push(CaseRecord::exact(
        with(pair_json(&table_pair), json!({"check": "table_p_divides_f_and_d", "p": 3, "order": EULER_ORDER})),
        lhs.coefficients().iter().map(format_rational).collect::<Vec<_>>().join(","),
        table.iter().map(format_rational).collect::<Vec<_>>().join(","),
    ));

    let covered: BTreeSet<String> = jobs.iter().map(|(p, prime)| PrimeCase::of(p, *prime).label()).collect();
    cases.push(CaseRecord::exact(
        json!({"check": "case_coverage", "primes": EULER_PRIMES}),
        covered.into_iter().collect::<Vec<_>>().join(" "),
        PrimeCase::all_labels().into_iter().collect::<Vec<_>>().join(" "),
    ));
    Ok(cases)
}

// Average values

/// Largest `Dd` used with the Dirichlet method.
pub const DIRICHLET_MAX_DELTA: i64 = 40;

pub(super) fn theorem1(params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let bits = params.precision_bits;
    let tol = params.tolerance();
    let tol_real = tolerance_real(tol, bits)?;
    match params.method {
        Theorem1Method::Chain => {
            let mut cases: Vec<CaseRecord> = default_matrix()
                .par_iter()
                .map(|p| {
                    let prm = with(
                        pair_json(p),
                        json!({"check": "average", "method": "chain", "tolerance": tol, "precision_bits": bits}),
                    );
                    match average_f(p, AverageMethod::Chain, tol, bits) {
                        Ok(r) => CaseRecord::numeric(
                            prm,
                            r.numeric_value().to_string(),
                            format_rational(r.exact_rhs()),
                            r.abs_error(),
                            r.abs_error() < &tol_real,
                        ),
                        Err(e) => CaseRecord::error(prm, e.to_string()),
                    }
                })
                .collect();
            cases.extend(qexp_cases(params)?);
            Ok(cases)
        }
        Theorem1Method::Dirichlet => Ok(default_matrix()
            .into_par_iter()
            .filter(|p| p.delta() <= DIRICHLET_MAX_DELTA && p.k() <= 3)
            .map(|p| {
                let prm = with(
                    pair_json(&p),
                    json!({"check": "average", "method": "dirichlet", "tolerance": tol, "precision_bits": bits}),
                );
                match average_f(&p, AverageMethod::Dirichlet, tol, bits) {
                    Ok(r) => CaseRecord::numeric(
                        prm,
                        format!("{} (M={})", r.numeric_value().to_decimal_string(20), r.truncation().unwrap_or(0)),
                        format_rational(r.exact_rhs()),
                        r.abs_error(),
                        r.abs_error() < &tol_real,
                    ),
                    Err(e) => CaseRecord::error(prm, e.to_string()),
                }
            })
            .collect()),
        Theorem1Method::Quadrature => {
            let samples = params.quadrature_samples;
            [pair(2, 5, 1), pair(3, -4, -3)]
                .iter()
                .map(|p| {
                    let prm = with(
                        pair_json(p),
                        json!({"check": "midpoint", "samples": samples, "relative_tolerance": tol, "precision_bits": bits}),
                    );
                    let mid = midpoint_average(p, samples)?;
                    let chain = average_f(p, AverageMethod::Chain, 1e-12, bits)?;
                    let mid_real = HighPrecisionReal::from_rational(&mid, bits);
                    let err = (&mid_real - chain.numeric_value()).abs();
                    let rel = err.to_f64() / chain.numeric_value().to_f64().abs();
                    Ok(CaseRecord::numeric(
                        prm,
                        decimal_expansion(&mid, 20).0,
                        chain.numeric_value().to_decimal_string(20),
                        &err,
                        rel < tol,
                    ))
                })
                .collect()
        }
    }
}

/// Coefficientwise comparison of the q-expansion identity for
/// `(k, d) ∈ {(2, 1), (3, -3)}` up to `q^12`.
fn qexp_cases(params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let bits = params.precision_bits;
    let tol = tolerance_real(1e-10, bits)?;
    let mut cases = Vec::new();
    for (k, d) in [(2u32, 1i64), (3, -3)] {
        let (lhs, rhs) = qexpansion(k, d, 12, 1e-12, bits)?;
        for (n, r) in rhs.iter() {
            let prm = json!({"check": "qexpansion", "k": k, "d": d, "N": n, "precision_bits": bits});
            match (lhs.get(n), r) {
                (None, Coefficient::Exact(v)) => cases.push(CaseRecord::exact(prm, "0", format_rational(v))),
                (Some(Coefficient::Exact(a)), Coefficient::Exact(b)) => cases.push(CaseRecord::rationals(prm, a, b)),
                (Some(l), r) => {
                    let err = (&l.to_real(bits) - &r.to_real(bits)).abs();
                    let pass = err < tol;
                    let lv = l.to_real(bits).to_string();
                    let rv = match r {
                        Coefficient::Exact(v) => format_rational(v),
                        Coefficient::Numeric(v) => v.to_string(),
                    };
                    cases.push(CaseRecord::numeric(prm, lv, rv, &err, pass));
                }
                (None, Coefficient::Numeric(_)) => unreachable!("right side is exact"),
            }
        }
    }
    Ok(cases)
}

// Vanishing at rationals for k = 1

pub(super) fn theorem2(params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let pairs = theorem2_pairs();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let samples: Vec<(usize, DiscriminantPair, BigRational)> = (0..params.theorem2_samples)
        .map(|i| (i, pairs[i % pairs.len()], random_rational(&mut rng, params.max_denominator)))
        .collect();
    // Five extra points per pair for the periodicity and inversion checks.
    let extra: Vec<(DiscriminantPair, BigRational)> = pairs
        .iter()
        .flat_map(|p| (0..5).map(|_| (*p, random_rational(&mut rng, params.max_denominator))).collect::<Vec<_>>())
        .collect();

    let eval = |p: &DiscriminantPair, x: &BigRational| -> Result<BigRational> {
        let chi = GenusCharacter::new(p.d())?;
        eval_f_with(p, &chi, x)
    };

    let mut cases: Vec<CaseRecord> = samples
        .par_iter()
        .map(|(i, p, x)| {
            let prm = with(pair_json(p), json!({"check": "vanishes", "index": i, "x": format_rational(x)}));
            match eval(p, x) {
                Ok(v) => CaseRecord::rationals(prm, &v, &BigRational::zero()),
                Err(e) => CaseRecord::error(prm, e.to_string()),
            }
        })
        .collect();

    let identity_cases: Vec<Result<Vec<CaseRecord>>> = extra
        .par_iter()
        .enumerate()
        .map(|(j, (p, x))| {
            let fx = eval(p, x)?;
            let one = eval(p, &(x + BigRational::from_integer(1.into())))?;
            let mut out = vec![CaseRecord::rationals(
                with(pair_json(p), json!({"check": "periodic", "index": j, "x": format_rational(x)})),
                &one,
                &fx,
            )];
            if !x.is_zero() {
                let inv = eval(p, &x.recip())?;
                out.push(CaseRecord::rationals(
                    with(pair_json(p), json!({"check": "inversion", "index": j, "x": format_rational(x)})),
                    &inv,
                    &fx,
                ));
            }
            Ok(out)
        })
        .collect();
    cases.extend(flatten(identity_cases)?);

    for p in &pairs {
        let at_zero = eval(p, &BigRational::zero())?;
        cases.push(CaseRecord::rationals(
            with(pair_json(p), json!({"check": "at_zero"})),
            &at_zero,
            &BigRational::zero(),
        ));
        let (neg_a, neg_c) = sign_change_sums(p)?;
        cases.push(CaseRecord::exact(
            with(pair_json(p), json!({"check": "sign_change_sum", "side": "a<0<c"})),
            neg_a.to_string(),
            "0",
        ));
        cases.push(CaseRecord::exact(
            with(pair_json(p), json!({"check": "sign_change_sum", "side": "c<0<a"})),
            neg_c.to_string(),
            "0",
        ));
    }
    Ok(cases)
}

// Genus characters

pub const GENUS_DELTAS: [i64; 3] = [12, 20, 108];
const GENUS_BOX: i64 = 50;

/// Fundamental `d` (either sign) with `d | Δ` and `Δ/d` a discriminant.
pub fn admissible_characters(delta: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for m in 1..=delta {
        if delta % m != 0 {
            continue;
        }
        for d in [m, -m] {
            if is_fundamental(d) && matches!((delta / d).rem_euclid(4), 0 | 1) {
                out.push(d);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All forms of discriminant `delta` with `|a|, |c| <= bound`.
pub fn forms_in_box(delta: i64, bound: i64) -> Vec<QuadraticForm> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for c in -bound..=bound {
            let b2 = delta + 4 * a * c;
            if b2 < 0 {
                continue;
            }
            let b = (b2 as f64).sqrt().round() as i64;
            if b * b != b2 {
                continue;
            }
            out.push(QuadraticForm::new(a, b, c));
            if b != 0 {
                out.push(QuadraticForm::new(a, -b, c));
            }
        }
    }
    out
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Sl2Matrix {
    let mut m = Sl2Matrix::IDENTITY;
    for _ in 0..rng.gen_range(1..=6) {
        let t = rng.gen_range(-3i64..=3);
        m = m.mul(&Sl2Matrix::new(1, t, 0, 1)).mul(&Sl2Matrix::S);
    }
    m
}

pub(super) fn genus(params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let mut cases = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for delta in GENUS_DELTAS {
        let forms = forms_in_box(delta, GENUS_BOX);
        let classes = enumerate_classes(delta)?;
        for d in admissible_characters(delta) {
            let chi = GenusCharacter::new(d)?;
            let base = json!({"delta": delta, "d": d, "box": GENUS_BOX});
            let values: Vec<Result<i8>> = forms.par_iter().map(|q| chi.eval(q)).collect();
            let defined = values.iter().filter(|v| v.is_ok()).count();
            cases.push(CaseRecord::exact(
                with(base.clone(), json!({"check": "well_defined"})),
                defined.to_string(),
                forms.len().to_string(),
            ));

            let zero_ok = forms
                .iter()
                .zip(&values)
                .filter(|(q, v)| {
                    let g = q.a.gcd(&q.b).gcd(&q.c).gcd(&d);
                    matches!(v, Ok(x) if (*x == 0) == (g > 1))
                })
                .count();
            cases.push(CaseRecord::exact(
                with(base.clone(), json!({"check": "zero_iff_gcd"})),
                zero_ok.to_string(),
                forms.len().to_string(),
            ));

            let (mut sign_ok, mut sign_total) = (0usize, 0usize);
            for (q, v) in forms.iter().zip(&values) {
                let (Ok(v), Ok(w)) = (v, chi.eval(&q.negated())) else { continue };
                if *v != 0 && w != 0 {
                    sign_total += 1;
                    if w == kronecker(d, -1) * v {
                        sign_ok += 1;
                    }
                }
            }
            cases.push(CaseRecord::exact(
                with(base.clone(), json!({"check": "sign_identity"})),
                sign_ok.to_string(),
                sign_total.to_string(),
            ));

            let constant = classes
                .iter()
                .filter(|cls| {
                    let vals: BTreeSet<i8> = cls.cycle.iter().filter_map(|q| chi.eval(q).ok()).collect();
                    vals.len() == 1
                })
                .count();
            cases.push(CaseRecord::exact(
                with(base.clone(), json!({"check": "constant_on_cycles"})),
                constant.to_string(),
                classes.len().to_string(),
            ));

            for (ci, cls) in classes.iter().enumerate() {
                let q = *cls.representative();
                let v0 = chi.eval(&q)?;
                let mut ok = 0;
                for _ in 0..100 {
                    let m = random_sl2(&mut rng);
                    if matches!(sl2_act(&q, &m).and_then(|r| chi.eval(&r)), Ok(v) if v == v0) {
                        ok += 1;
                    }
                }
                cases.push(CaseRecord::exact(
                    json!({"check": "sl2_invariance", "delta": delta, "d": d, "class": ci, "form": q.to_string(), "matrices": 100}),
                    ok.to_string(),
                    "100",
                ));
            }
        }
    }

    for (d, big_d) in [(-3i64, -4i64), (-4, -3), (5, 1), (-3, -7), (8, 1), (-7, -3), (5, 5), (-3, -3)] {
        let delta = d * big_d;
        let chi = GenusCharacter::new(d)?;
        for p in [3i64, 5, 7] {
            if d % p == 0 {
                continue;
            }
            for n in 1..=3u32 {
                let a = p.pow(n);
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for b in 0..2 * a {
                    if (b * b - delta) % (4 * a) == 0 {
                        let q = QuadraticForm::new(-a, b, (delta - b * b) / (4 * a));
                        got.push(chi.eval(&q).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string()));
                        want.push(kronecker(d, -a).to_string());
                    }
                }
                cases.push(CaseRecord::exact(
                    json!({"check": "prime_power_formula", "d": d, "D": big_d, "p": p, "n": n}),
                    got.join(","),
                    want.join(","),
                ));
            }
        }
    }
    Ok(cases)
}

// Class decomposition

pub fn class_instances() -> Vec<DiscriminantPair> {
    vec![pair(3, -4, -3), pair(2, 4, 5), pair(3, -36, -3)]
}

const CLASS_SAMPLES: usize = 20;
const CLASS_MAX_Q: i64 = 12;

pub(super) fn classes(params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut cases = Vec::new();
    for p in class_instances() {
        let table = ClassTable::new(p.delta())?;
        let chis = class_characters(&p, &table)?;
        let negs: Vec<usize> = (0..table.len()).map(|i| table.negated(i)).collect::<Result<_>>()?;
        if p.delta() == 12 {
            cases.push(CaseRecord::exact(json!({"check": "class_count", "delta": 12}), table.len().to_string(), "2"));
        }
        let xs: Vec<BigRational> = (0..CLASS_SAMPLES).map(|_| random_rational(&mut rng, CLASS_MAX_Q)).collect();
        let chi = GenusCharacter::new(p.d())?;
        let results: Vec<Result<Vec<CaseRecord>>> = xs
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let sums = class_sums(p.k(), &table, x)?;
                let f = eval_f_with(&p, &chi, x)?;
                let weighted: BigRational =
                    sums.iter().zip(&chis).map(|(s, c)| s * BigRational::from_integer(BigInt::from(*c))).sum();
                let sign = if p.k() % 2 == 0 { 1 } else { -1 };
                let sym: BigRational = (0..sums.len())
                    .map(|j| {
                        let fj = &sums[j] + &sums[negs[j]] * BigRational::from_integer(BigInt::from(sign));
                        fj * BigRational::from_integer(BigInt::from(chis[j]))
                    })
                    .sum();
                let base = with(pair_json(&p), json!({"index": i, "x": format_rational(x), "classes": table.len()}));
                Ok(vec![
                    CaseRecord::rationals(with(base.clone(), json!({"check": "class_decomposition"})), &weighted, &f),
                    CaseRecord::rationals(with(base, json!({"check": "symmetrization"})), &sym, &(f * rat(2, 1))),
                ])
            })
            .collect();
        cases.extend(flatten(results)?);
    }
    Ok(cases)
}

// Arithmetic anchors

pub(super) fn arith(params: &SuiteParams) -> Result<Vec<CaseRecord>> {
    let bits = params.precision_bits;
    let mut cases = Vec::new();

    // Zeta values against π.
    let pi = HighPrecisionReal::from_decimal_str(PI_100, bits)?;
    let pi2 = &pi * &pi;
    let pi4 = &pi2 * &pi2;
    let digits = (bits as usize * 30103 / 100_000).min(100).saturating_sub(4);
    let zeta_tol = tolerance_real(10f64.powi(-(digits as i32)), bits)?;
    for (s, a, expected) in [
        (2u32, rat(1, 1), &pi2 / &HighPrecisionReal::from_integer(6, bits)),
        (4, rat(1, 1), &pi4 / &HighPrecisionReal::from_integer(90, bits)),
        (2, rat(1, 2), &pi2 / &HighPrecisionReal::from_integer(2, bits)),
    ] {
        let prm = json!({"check": "hurwitz_zeta", "s": s, "a": format_rational(&a), "precision_bits": bits, "digits": digits});
        let v = hurwitz_zeta_numeric(s, &a, bits)?;
        let err = (&v - &expected).abs();
        cases.push(CaseRecord::numeric(prm, v.to_string(), expected.to_string(), &err, err < zeta_tol));
    }

    // Odd Bernoulli numbers and ζ at negative integers.
    for j in 1..=30usize {
        cases.push(CaseRecord::rationals(
            json!({"check": "bernoulli_odd", "n": 2 * j + 1}),
            &bernoulli(2 * j + 1),
            &rat(0, 1),
        ));
    }
    for k in [1u32, 2, 4, 6] {
        let via_poly = -bernoulli_poly(k as usize, &rat(1, 1)) / BigRational::from_integer(BigInt::from(k));
        cases.push(CaseRecord::rationals(
            json!({"check": "zeta_negative", "s": 1 - k as i64}),
            &l_negative(k, 1)?,
            &via_poly,
        ));
    }

    // Cohen numbers.
    for k in 1..=6u32 {
        let expected = -bernoulli(2 * k as usize) / BigRational::from_integer(BigInt::from(2 * k));
        cases.push(CaseRecord::rationals(json!({"check": "cohen_constant", "k": k}), &cohen_h(k, 0)?, &expected));
    }
    for n in 1..=100u64 {
        cases.push(CaseRecord::rationals(
            json!({"check": "cohen_hurwitz", "k": 1, "N": n}),
            &cohen_h(1, n)?,
            &hurwitz_class_number(n),
        ));
    }
    for k in 1..=6u32 {
        let vanishing: Vec<u64> = (1..=100u64)
            .filter(|&n| {
                let s = if k % 2 == 0 { n as i64 } else { -(n as i64) };
                matches!(s.rem_euclid(4), 2 | 3)
            })
            .collect();
        let got: Vec<String> =
            vanishing.iter().map(|&n| cohen_h(k, n).map(|v| format_rational(&v))).collect::<Result<_>>()?;
        cases.push(CaseRecord::exact(
            json!({"check": "cohen_vanishing", "k": k, "n_max": 100}),
            got.join(","),
            vec!["0"; got.len()].join(","),
        ));
    }

    // Divisor-sum factorization.
    for k in 1..=5u32 {
        for d0 in [1i64, 5, -3, -4, 8, 12] {
            for f in 1..=60u64 {
                let (l, r) = f_divisor_identity(k, d0, f)?;
                cases.push(CaseRecord::rationals(json!({"check": "f_divisor", "k": k, "D0": d0, "f": f}), &l, &r));
            }
        }
    }

    // Discriminant factorization round trip.
    for big_d in [-36i64, -16, -3, 1, 5, 8, 12, 45, 125, 108, 32] {
        let fd = factor_discriminant(big_d)?;
        let back = fd.d0 * (fd.f as i64).pow(2);
        cases.push(CaseRecord::exact(
            json!({"check": "factor_discriminant", "D": big_d}),
            back.to_string(),
            big_d.to_string(),
        ));
    }

    // β_k against quadrature.
    for (k, q) in [
        (2u32, QuadraticForm::new(-1, 0, 1)),
        (2, QuadraticForm::new(-2, 0, 2)),
        (3, QuadraticForm::new(-1, 0, 1)),
        (2, QuadraticForm::new(-1, 1, 1)),
        (3, QuadraticForm::new(-3, 2, 5)),
        (4, QuadraticForm::new(-2, 3, 1)),
        (2, QuadraticForm::new(-5, 1, 3)),
        (5, QuadraticForm::new(-1, 1, 2)),
        (3, QuadraticForm::new(-7, 0, 3)),
        (4, QuadraticForm::new(-4, 4, 3)),
    ] {
        let closed = beta_closed(k, &q, bits)?;
        let delta = q.discriminant()? as f64;
        let (a, b) = (q.a as f64, q.b as f64);
        let (r1, r2) = ((-b + delta.sqrt()) / (2.0 * a), (-b - delta.sqrt()) / (2.0 * a));
        let (lo, hi) = (r1.min(r2), r1.max(r2));
        let f = move |x: f64| (a * x * x + b * x + q.c as f64).max(0.0).powi(k as i32 - 1);
        let numeric = adaptive_simpson(&f, lo, hi, 1e-12);
        let err = (closed.to_f64() - numeric).abs();
        let err_real = HighPrecisionReal::from_rational(&BigRational::from_float(err).unwrap_or_default(), bits);
        cases.push(CaseRecord::numeric(
            json!({"check": "beta_quadrature", "k": k, "form": q.to_string()}),
            closed.to_decimal_string(15),
            format!("{numeric:.15}"),
            &err_real,
            err < 1e-6,
        ));
    }

    // Kronecker multiplicativity.
    for d in [-4i64, -3, 5, 8, 12, -7, 13] {
        let mut bad = 0;
        let mut total = 0;
        for m in 1..=60i64 {
            for n in 1..=60i64 {
                if m.gcd(&n) == 1 {
                    total += 1;
                    if kronecker(d, m * n) != kronecker(d, m) * kronecker(d, n) {
                        bad += 1;
                    }
                }
            }
        }
        cases.push(CaseRecord::exact(
            json!({"check": "kronecker_multiplicative", "d": d}),
            (total - bad).to_string(),
            total.to_string(),
        ));
    }
    Ok(cases)
}
