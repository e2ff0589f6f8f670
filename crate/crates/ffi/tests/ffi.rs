use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use qsum_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    qsum_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qsum_last_error_message()).to_str().unwrap().to_string() }
}

fn pair(k: u32, big_d: i64, d: i64) -> *mut QsumPair {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { qsum_pair_new(k, big_d, d, &mut p) }, QsumStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn eval_at_rationals() {
    let p = pair(2, 5, 1);
    let x = CString::new("0").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qsum_eval_f(p, x.as_ptr(), &mut out), QsumStatus::Ok);
        assert_eq!(take(out), "2");
        let x = CString::new("1/2").unwrap();
        assert_eq!(qsum_eval_f(p, x.as_ptr(), &mut out), QsumStatus::Ok);
        let half = take(out);
        assert!(half.contains('/') || half.parse::<i64>().is_ok());
        qsum_pair_free(p);
    }
}

#[test]
fn rejects_bad_pairs() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(qsum_pair_new(2, -4, 1, &mut p), QsumStatus::SignConstraint);
        assert!(p.is_null());
        assert!(last_error().contains("sign"));
        assert_eq!(qsum_pair_new(2, 5, 20, &mut p), QsumStatus::NotFundamental);
        assert_eq!(qsum_pair_new(2, 6, 1, &mut p), QsumStatus::InvalidArgument);
        assert_eq!(qsum_pair_new(2, 5, 1, ptr::null_mut()), QsumStatus::NullPointer);
    }
}

#[test]
fn malformed_x() {
    let p = pair(2, 5, 1);
    let x = CString::new("1/0").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qsum_eval_f(p, x.as_ptr(), &mut out), QsumStatus::InvalidArgument);
        assert!(out.is_null());
        assert_eq!(qsum_eval_f(p, ptr::null(), &mut out), QsumStatus::NullPointer);
        assert_eq!(qsum_eval_f(ptr::null(), x.as_ptr(), &mut out), QsumStatus::NullPointer);
        qsum_pair_free(p);
    }
}

#[test]
fn counts_and_cohen() {
    let p = pair(2, 5, 1);
    let mut n = 0i64;
    unsafe {
        assert_eq!(qsum_n_dd(p, 1, &mut n), QsumStatus::Ok);
        assert_eq!(n, 1);
        qsum_pair_free(p);
        let mut s = ptr::null_mut();
        assert_eq!(qsum_cohen_h(2, 0, &mut s), QsumStatus::Ok);
        assert_eq!(take(s), "1/120");
        assert_eq!(qsum_cohen_h(2, 3, &mut s), QsumStatus::Ok);
        assert_eq!(take(s), "0");
    }
}

#[test]
fn average_matches_exact() {
    let p = pair(2, 5, 1);
    let (mut v, mut e, mut err) = (ptr::null_mut(), ptr::null_mut(), f64::NAN);
    unsafe {
        let st = qsum_average(p, QsumMethod::Chain, 1e-12, 256, &mut v, &mut e, &mut err);
        assert_eq!(st, QsumStatus::Ok, "{}", last_error());
        assert_eq!(take(e), "2");
        let value: f64 = take(v).parse().unwrap();
        assert!((value - 2.0).abs() < 1e-12);
        assert!(err < 1e-12);
        let st = qsum_average(p, QsumMethod::Chain, 1e-12, 16, &mut v, &mut e, &mut err);
        assert_eq!(st, QsumStatus::InvalidArgument);
        qsum_pair_free(p);
    }
}

#[test]
fn classes_of_twelve() {
    let mut c = ptr::null_mut();
    let mut count = 0usize;
    unsafe {
        assert_eq!(qsum_classes_new(12, &mut c), QsumStatus::Ok);
        assert_eq!(qsum_classes_count(c, &mut count), QsumStatus::Ok);
        assert_eq!(count, 2);
        let mut s = ptr::null_mut();
        assert_eq!(qsum_classes_cycle(c, 0, &mut s), QsumStatus::Ok);
        let json = take(s);
        assert!(json.starts_with("[[\"") && json.ends_with("\"]]"));
        assert_eq!(qsum_classes_cycle(c, 5, &mut s), QsumStatus::InvalidArgument);
        qsum_classes_free(c);
        assert_eq!(qsum_classes_new(16, &mut c), QsumStatus::SquareDiscriminant);
    }
}

#[test]
fn verify_suite() {
    let name = CString::new("genus").unwrap();
    let mut report = ptr::null_mut();
    let mut passed = false;
    unsafe {
        assert_eq!(qsum_verify(name.as_ptr(), 7, &mut report, &mut passed), QsumStatus::Ok);
        let json = take(report);
        assert!(passed);
        assert!(json.contains("\"seed\": 7"));
        let bad = CString::new("nope").unwrap();
        assert_eq!(qsum_verify(bad.as_ptr(), 7, &mut report, &mut passed), QsumStatus::InvalidArgument);
    }
}

#[test]
fn free_null_is_noop() {
    unsafe {
        qsum_pair_free(ptr::null_mut());
        qsum_classes_free(ptr::null_mut());
        qsum_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/qsum.h");
    for name in [
        "qsum_pair_new",
        "qsum_pair_free",
        "qsum_eval_f",
        "qsum_n_dd",
        "qsum_cohen_h",
        "qsum_average",
        "qsum_classes_new",
        "qsum_classes_count",
        "qsum_classes_cycle",
        "qsum_classes_free",
        "qsum_verify",
        "qsum_string_free",
        "qsum_last_error_message",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    use std::path::PathBuf;
    use std::process::Command;

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let profile_dir: PathBuf = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libqsum_ffi.a");
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile_path("qsum_smoke");
    let status = Command::new(&cc)
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "-14");
}

fn tempfile_path(stem: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("{stem}_{}", std::process::id()))
}
