//! C ABI for `qsum`.
//!
//! Conventions:
//! - Every function returns a [`QsumStatus`]; results go through out
//!   pointers, which are written only on success.
//! - Handles ([`QsumPair`], [`QsumClasses`]) are opaque and must be released
//!   with their `_free` function.
//! - Strings returned by the library are NUL-terminated UTF-8 and must be
//!   released with [`qsum_string_free`].
//! - After a non-`OK` status, [`qsum_last_error_message`] describes the
//!   failure. The message is thread-local and valid until the next call on
//!   the same thread.
//! - Panics never cross the boundary; they surface as `QSUM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qsum::arith::{format_rational, parse_rational};
use qsum::qforms::{ClassTable, DiscriminantPair, GenusCharacter};
use qsum::series::{average_f, cohen_h, eval_f_with, AverageMethod, NddCounter};
use qsum::verify::{run_suite, Suite, SuiteParams};
use qsum::Error;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SignConstraint = 3,
    NotFundamental = 4,
    SquareDiscriminant = 5,
    NoConvergence = 6,
    Overflow = 7,
    Internal = 8,
    Panic = 9,
}

/// Averaging method for [`qsum_average`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsumMethod {
    Chain = 0,
    Dirichlet = 1,
}

/// A validated `(k, D, d)` with its genus-character cache.
pub struct QsumPair {
    pair: DiscriminantPair,
    chi: GenusCharacter,
}

/// The classes of one positive non-square discriminant.
pub struct QsumClasses {
    table: ClassTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("NUL bytes removed"));
}

fn status_of(err: &Error) -> QsumStatus {
    match err {
        Error::SignConstraint { .. } => QsumStatus::SignConstraint,
        Error::NotFundamental(_) => QsumStatus::NotFundamental,
        Error::SquareDiscriminant(_) => QsumStatus::SquareDiscriminant,
        Error::NonConvergence { .. } => QsumStatus::NoConvergence,
        Error::Overflow(_) => QsumStatus::Overflow,
        Error::InvalidArgument(_) | Error::NotDiscriminant(_) | Error::UnknownSuite(_) => QsumStatus::InvalidArgument,
        Error::IllDefinedCharacter { .. }
        | Error::ReductionCap { .. }
        | Error::InconsistentClasses(_)
        | Error::PrecisionLoss(_) => QsumStatus::Internal,
    }
}

/// Runs `f` with panics and errors mapped to status codes.
fn guard(f: impl FnOnce() -> Result<(), (QsumStatus, String)>) -> QsumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QsumStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&format!("internal panic: {msg}"));
            QsumStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (QsumStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (QsumStatus, String) {
    (QsumStatus::NullPointer, format!("{name} is null"))
}

fn to_c_string(s: String) -> Result<*mut c_char, (QsumStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (QsumStatus::Internal, "string contains NUL".into()))
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, (QsumStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (QsumStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

/// Creates a pair handle.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsum_pair_new(k: u32, big_d: i64, d: i64, out: *mut *mut QsumPair) -> QsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let pair = DiscriminantPair::new(k, big_d, d).map_err(lib_err)?;
        let chi = GenusCharacter::new(d).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(QsumPair { pair, chi }));
        Ok(())
    })
}

/// Releases a pair handle. Null is ignored.
///
/// # Safety
/// `pair` must be null or a handle from [`qsum_pair_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsum_pair_free(pair: *mut QsumPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// `F_{k,D,d}(x)` for `x` given as an integer or `p/q` string; the result
/// is written as `p/q` (or an integer).
///
/// # Safety
/// `pair` must be a live handle, `x` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_eval_f(pair: *const QsumPair, x: *const c_char, out: *mut *mut c_char) -> QsumStatus {
    guard(|| {
        let pair = pair.as_ref().ok_or_else(|| null("pair"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let x = parse_rational(read_str(x, "x")?).map_err(lib_err)?;
        let v = eval_f_with(&pair.pair, &pair.chi, &x).map_err(lib_err)?;
        *out = to_c_string(format_rational(&v))?;
        Ok(())
    })
}

/// `N_{D,d}(n)`.
///
/// # Safety
/// `pair` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_n_dd(pair: *const QsumPair, n: u64, out: *mut i64) -> QsumStatus {
    guard(|| {
        let pair = pair.as_ref().ok_or_else(|| null("pair"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let counter = NddCounter::new(pair.pair).map_err(lib_err)?;
        *out = counter.n(n).map_err(lib_err)?;
        Ok(())
    })
}

/// Cohen's number `H(k, N)` as a rational string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_cohen_h(k: u32, n: u64, out: *mut *mut c_char) -> QsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = cohen_h(k, n).map_err(lib_err)?;
        *out = to_c_string(format_rational(&v))?;
        Ok(())
    })
}

/// Average of `F` over a period. Writes the numeric value as a decimal
/// string, the exact value as a rational string and the absolute error.
///
/// # Safety
/// `pair` must be a live handle; each out pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_average(
    pair: *const QsumPair,
    method: QsumMethod,
    tolerance: f64,
    precision_bits: u32,
    value_out: *mut *mut c_char,
    exact_out: *mut *mut c_char,
    abs_error_out: *mut f64,
) -> QsumStatus {
    guard(|| {
        let pair = pair.as_ref().ok_or_else(|| null("pair"))?;
        if value_out.is_null() || exact_out.is_null() || abs_error_out.is_null() {
            return Err(null("output pointer"));
        }
        if precision_bits < 64 {
            return Err((QsumStatus::InvalidArgument, "precision_bits must be >= 64".into()));
        }
        let method = match method {
            QsumMethod::Chain => AverageMethod::Chain,
            QsumMethod::Dirichlet => AverageMethod::Dirichlet,
        };
        let r = average_f(&pair.pair, method, tolerance, precision_bits).map_err(lib_err)?;
        let value = to_c_string(r.numeric_value().to_string())?;
        let exact = match to_c_string(format_rational(r.exact_rhs())) {
            Ok(s) => s,
            Err(e) => {
                drop(CString::from_raw(value));
                return Err(e);
            }
        };
        *value_out = value;
        *exact_out = exact;
        *abs_error_out = r.abs_error().to_f64();
        Ok(())
    })
}

/// Enumerates the classes of discriminant `delta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_classes_new(delta: i64, out: *mut *mut QsumClasses) -> QsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = ClassTable::new(delta).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(QsumClasses { table }));
        Ok(())
    })
}

/// Number of classes.
///
/// # Safety
/// `classes` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_classes_count(classes: *const QsumClasses, out: *mut usize) -> QsumStatus {
    guard(|| {
        let classes = classes.as_ref().ok_or_else(|| null("classes"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = classes.table.len();
        Ok(())
    })
}

/// Cycle of class `index` as a JSON array of `[a, b, c]` string triples.
///
/// # Safety
/// `classes` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_classes_cycle(
    classes: *const QsumClasses,
    index: usize,
    out: *mut *mut c_char,
) -> QsumStatus {
    guard(|| {
        let classes = classes.as_ref().ok_or_else(|| null("classes"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cls = classes
            .table
            .classes()
            .get(index)
            .ok_or_else(|| (QsumStatus::InvalidArgument, format!("class index {index} out of range")))?;
        let json = cycle_json(&cls.cycle);
        *out = to_c_string(json)?;
        Ok(())
    })
}

fn cycle_json(cycle: &[qsum::QuadraticForm]) -> String {
    let items: Vec<String> = cycle.iter().map(|q| format!("[\"{}\",\"{}\",\"{}\"]", q.a, q.b, q.c)).collect();
    format!("[{}]", items.join(","))
}

/// Releases a classes handle. Null is ignored.
///
/// # Safety
/// `classes` must be null or a handle from [`qsum_classes_new`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn qsum_classes_free(classes: *mut QsumClasses) {
    if !classes.is_null() {
        drop(Box::from_raw(classes));
    }
}

/// Runs the named suite with default parameters and `seed`. Writes the JSON
/// report and whether every case passed.
///
/// # Safety
/// `suite` must be a NUL-terminated string; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsum_verify(
    suite: *const c_char,
    seed: u64,
    report_out: *mut *mut c_char,
    passed_out: *mut bool,
) -> QsumStatus {
    guard(|| {
        if report_out.is_null() || passed_out.is_null() {
            return Err(null("output pointer"));
        }
        let suite: Suite = read_str(suite, "suite")?.parse().map_err(lib_err)?;
        let params = SuiteParams { seed, ..Default::default() };
        let report = run_suite(suite, &params).map_err(lib_err)?;
        *report_out = to_c_string(report.to_json())?;
        *passed_out = report.pass();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty if none.
#[no_mangle]
pub extern "C" fn qsum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
