//! The `qsum` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! does not converge, 2 on usage errors (bad flags, malformed rationals,
//! invalid discriminant pairs).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;

use crate::arith::{decimal_expansion, format_rational, parse_rational, DEFAULT_PRECISION_BITS};
use crate::qforms::{enumerate_classes, DiscriminantPair, GenusCharacter};
use crate::series::{average_f, cohen_h, eval_f, eval_f_with, qexpansion, AverageMethod, NddCounter};
use crate::verify::{run_suite, Suite, SuiteParams, Theorem1Method, DEFAULT_SEED};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Digits after the point in CSV output.
pub const CSV_DIGITS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qsum", version, about = "Sums of quadratic functions with two discriminants")]
pub struct Cli {
    /// Working precision in bits for numeric values.
    #[arg(long, global = true, env = "QSUM_PRECISION_BITS", default_value_t = DEFAULT_PRECISION_BITS,
          value_parser = clap::value_parser!(u32).range(64..=4096))]
    pub precision_bits: u32,

    #[command(subcommand)]
    pub command: Command,
}

/// `(k, D, d)` with `sign d = sign D = (-1)^k`.
#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long = "D", allow_hyphen_values = true)]
    pub big_d: i64,
    #[arg(long = "d", allow_hyphen_values = true)]
    pub d: i64,
}

impl PairArgs {
    fn pair(&self) -> Result<DiscriminantPair, Error> {
        DiscriminantPair::new(self.k, self.big_d, self.d)
    }
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact value of F_{k,D,d}(x).
    Eval {
        #[command(flatten)]
        pair: PairArgs,
        /// Integer or p/q.
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        x: BigRational,
    },
    /// Average of F over one period against its exact value.
    Average {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "chain", value_parser = ["chain", "dirichlet"])]
        method: String,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// N_{D,d}(n) for 1 <= n <= n-max.
    Nseq {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        n_max: u64,
    },
    /// Cohen numbers H(k, N) for 0 <= N <= n-max.
    Cohen {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: u64,
    },
    /// Both sides of the q-expansion identity as JSON.
    Qexp {
        #[arg(long)]
        k: u32,
        #[arg(long = "d", allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Classes of forms of discriminant delta as cycles of reduced forms.
    Classes {
        #[arg(long)]
        delta: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// CSV of F at the midpoints x = (2j+1)/(2S), 0 <= j < S.
    PlotData {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        samples: u64,
        /// Output file; `-` for standard output.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an identity suite and emit its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Averaging method for the theorem1 suite.
        #[arg(long, default_value = "chain", value_parser = ["chain", "dirichlet", "quadrature"])]
        method: String,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

/// Command failure, split by exit code.
enum Failure {
    Usage(String),
    Runtime(String),
    ClosedOutput,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. }
            | Error::PrecisionLoss(_)
            | Error::IllDefinedCharacter { .. }
            | Error::ReductionCap { .. }
            | Error::InconsistentClasses(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::ClosedOutput;
        }
        Failure::Runtime(e.to_string())
    }
}

/// Decimal truncated to [`CSV_DIGITS`] and whether it is exact.
pub fn csv_decimal(r: &BigRational) -> (String, bool) {
    decimal_expansion(r, CSV_DIGITS)
}

/// Midpoint `x_j = (2j+1)/(2S)`.
pub fn midpoint(j: u64, samples: u64) -> BigRational {
    BigRational::new(BigInt::from(2 * j + 1), BigInt::from(2 * samples))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let bits = cli.precision_bits;
    match &cli.command {
        Command::Eval { pair, x } => {
            let v = eval_f(&pair.pair()?, x)?;
            writeln!(out, "{}", format_rational(&v))?;
        }
        Command::Average { pair, method, tolerance, format } => {
            let method: AverageMethod = method.parse()?;
            let r = average_f(&pair.pair()?, method, *tolerance, bits)?;
            match format {
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializes"))?,
                OutputFormat::Text => {
                    writeln!(out, "method: {}", r.method())?;
                    writeln!(out, "value: {}", r.numeric_value())?;
                    writeln!(out, "exact: {}", format_rational(r.exact_rhs()))?;
                    writeln!(out, "abs_error: {}", r.abs_error())?;
                    if let Some(m) = r.truncation() {
                        writeln!(out, "truncation: {m}")?;
                    }
                }
            }
        }
        Command::Nseq { pair, n_max } => {
            let counter = NddCounter::new(pair.pair()?)?;
            let values: Vec<i64> = (1..=*n_max).into_par_iter().map(|n| counter.n(n)).collect::<Result<_, _>>()?;
            for (n, v) in values.iter().enumerate() {
                writeln!(out, "{} {v}", n + 1)?;
            }
        }
        Command::Cohen { k, n_max } => {
            for n in 0..=*n_max {
                writeln!(out, "{n} {}", format_rational(&cohen_h(*k, n)?))?;
            }
        }
        Command::Qexp { k, d, n_max, tolerance } => {
            let (lhs, rhs) = qexpansion(*k, *d, *n_max, *tolerance, bits)?;
            let doc = json!({"k": k, "d": d, "lhs": lhs, "rhs": rhs});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
        }
        Command::Classes { delta, format } => {
            let classes = enumerate_classes(*delta)?;
            match format {
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&classes).expect("serializes"))?,
                OutputFormat::Text => {
                    for cls in &classes {
                        let forms: Vec<String> = cls.cycle.iter().map(ToString::to_string).collect();
                        writeln!(out, "{}", forms.join(" "))?;
                    }
                }
            }
        }
        Command::PlotData { pair, samples, out: path } => {
            if *samples == 0 {
                return Err(Failure::Usage("samples must be >= 1".into()));
            }
            let pair = pair.pair()?;
            let chi = GenusCharacter::new(pair.d())?;
            let rows: Vec<String> = (0..*samples)
                .into_par_iter()
                .map(|j| {
                    let x = midpoint(j, *samples);
                    let f = eval_f_with(&pair, &chi, &x)?;
                    let (digits, exact) = csv_decimal(&f);
                    Ok(format!("{},{digits},{exact}", format_rational(&x)))
                })
                .collect::<Result<_, Error>>()?;
            let mut csv = String::from("x,F,exact\n");
            for row in rows {
                csv.push_str(&row);
                csv.push('\n');
            }
            if path.as_os_str() == "-" {
                out.write_all(csv.as_bytes())?;
            } else {
                fs::write(path, csv)?;
            }
        }
        Command::Verify { suite, seed, report, method, tolerance } => {
            let suite: Suite = suite.parse()?;
            let method: Theorem1Method = method.parse()?;
            let params =
                SuiteParams { seed: *seed, method, tolerance: *tolerance, precision_bits: bits, ..Default::default() };
            let r = run_suite(suite, &params)?;
            let text = r.to_json();
            writeln!(out, "{text}")?;
            if let Some(path) = report {
                fs::write(path, format!("{text}\n"))?;
            }
            return Ok(if r.pass() { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
        // A reader such as `head` went away; nothing left to report.
        Err(Failure::ClosedOutput) => EXIT_OK,
    }
}
