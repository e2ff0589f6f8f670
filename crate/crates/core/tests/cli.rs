use std::process::{Command, Output};

use num_rational::BigRational;
use qsum::arith::{decimal_expansion, parse_rational};
use qsum::series::eval_f;
use qsum::DiscriminantPair;

fn qsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsum")).args(args).env_remove("QSUM_PRECISION_BITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_exact_value() {
    let o = qsum(&["eval", "--k", "3", "--D", "-4", "--d", "-3", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-14");
    let o = qsum(&["eval", "--k", "2", "--D", "5", "--d", "1", "--x", "-7/3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["eval", "--k", "2", "--D", "-4", "--d", "1", "--x", "0"],
        vec!["eval", "--k", "2", "--D", "5", "--d", "1", "--x", "1/0"],
        vec!["eval", "--k", "2", "--D", "5", "--d", "1"],
        vec!["verify", "--suite", "nonsense"],
        vec!["average", "--k", "2", "--D", "5", "--d", "1", "--method", "guess"],
        vec!["--precision-bits", "8", "cohen", "--k", "2", "--n-max", "3"],
        vec!["frobnicate"],
    ] {
        let o = qsum(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn average_json_has_exact_rhs() {
    let o = qsum(&["average", "--k", "3", "--D", "-4", "--d", "-3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exact_rhs"], "-14");
    assert_eq!(v["method"], "chain");
    let value: f64 = v["numeric_value"].as_str().unwrap().parse().unwrap();
    assert!((value + 14.0).abs() < 1e-12);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsum"))
        .args(["average", "--k", "2", "--D", "5", "--d", "1", "--format", "json"])
        .env("QSUM_PRECISION_BITS", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let wide = qsum(&["average", "--k", "2", "--D", "5", "--d", "1", "--format", "json"]);
    assert!(o.stdout.len() < wide.stdout.len());
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        vec!["nseq", "--k", "2", "--D", "45", "--d", "5", "--n-max", "60"],
        vec!["cohen", "--k", "3", "--n-max", "40"],
        vec!["classes", "--delta", "108", "--format", "json"],
        vec!["qexp", "--k", "2", "--d", "1", "--n-max", "6", "--tolerance", "1e-10"],
    ] {
        let a = qsum(&args);
        let b = qsum(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_reports_identical_up_to_duration() {
    let dir = tempfile::tempdir().unwrap();
    let mask = |s: String| {
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert!(v["duration_ms"].is_u64());
        s.lines().filter(|l| !l.contains("\"duration_ms\"")).collect::<Vec<_>>().join("\n")
    };
    let mut seen = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let o = qsum(&["verify", "--suite", "classes", "--seed", "11", "--report", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["seed"], 11);
        assert_eq!(v["pass"], true);
        seen.push(mask(text));
    }
    assert_eq!(seen[0], seen[1]);
    let other = dir.path().join("c.json");
    qsum(&["verify", "--suite", "classes", "--seed", "12", "--report", other.to_str().unwrap()]);
    assert_ne!(mask(std::fs::read_to_string(other).unwrap()), seen[0]);
}

#[test]
fn plot_data_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.csv");
    let o =
        qsum(&["plot-data", "--k", "2", "--D", "5", "--d", "1", "--samples", "25", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let pair = DiscriminantPair::new(2, 5, 1).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,F,exact"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 25);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 3, "{row}");
        let x: BigRational = parse_rational(cols[0]).unwrap();
        let f = eval_f(&pair, &x).unwrap();
        let printed: f64 = cols[1].parse().unwrap();
        assert!((printed - qsum::arith::HighPrecisionReal::from_rational(&f, 128).to_f64()).abs() < 1e-30);
        let (digits, exact) = decimal_expansion(&f, 40);
        assert_eq!(cols[1], digits);
        assert_eq!(cols[2], if exact { "true" } else { "false" });
    }
}

#[test]
fn failing_verification_exits_one() {
    // A Dirichlet run with a tolerance it cannot meet before the cap.
    let o = qsum(&["verify", "--suite", "theorem1", "--method", "dirichlet", "--tolerance", "1e-9"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}
