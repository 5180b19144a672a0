//! Command-line front end: `reduce`, `closed-form`, `eval`, `verify`.
//!
//! Exit codes are 0 on success, 1 when a verification or consistency check
//! fails and 2 on any usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::rational::to_fraction_string;
use crate::loggamma::{closed_form, ClosedFormValue};
use crate::quadrature::{
    exact_poly_cube, integrate_reduced, mc_cube_with_threads, Integrand, NumericReport, QuadPolicy,
};
use crate::reduction::reduction_plan;
use crate::verify::{all_passed, run_suite, Check, Suite, VerifyOptions};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const REDUCE_MAX_N: i64 = 64;
const CLOSED_FORM_MAX_N: i64 = 200;

#[derive(Debug, Parser)]
#[command(
    name = "cubeslice",
    version,
    about = "Dimension reduction of f(x1+...+xn) over the unit cube"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    Reduced,
    Mc,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the shell weights and prefactor for dimension n.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Exact value of the log-gamma cube integral.
    ClosedForm {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 15)]
        digits: u32,
    },
    /// Numeric evaluation by the reduced quadrature and/or Monte Carlo.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// loggamma, poly:c0,c1,..., exp, sin or recip
        #[arg(long = "f")]
        f: String,
        #[arg(long, value_enum, default_value_t = EvalMethod::Reduced)]
        method: EvalMethod,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Worker threads for Monte Carlo; results do not depend on it.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, Error> {
    s.parse()
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReduceResults {
    pub prefactor: String,
    /// `weights[m-1]` holds the coefficients of `G_m`, ascending.
    pub weights: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormJson {
    pub constant: String,
    pub log_pi: String,
    pub log_primes: BTreeMap<String, String>,
    pub decimal: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormResults {
    pub symbolic: String,
    pub closed_form: ClosedFormJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<NumericReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<NumericReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_tolerance: Option<bool>,
    /// Exact cube integral, for polynomial `f`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    /// Closed-form decimal, for log-gamma.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResults {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ClosedFormJson {
    pub fn new(v: &ClosedFormValue, digits: u32) -> crate::Result<Self> {
        Ok(ClosedFormJson {
            constant: to_fraction_string(v.constant()),
            log_pi: to_fraction_string(v.log_pi()),
            log_primes: v
                .log_primes()
                .iter()
                .map(|(p, q)| (p.to_string(), to_fraction_string(q)))
                .collect(),
            decimal: v.numeric_value(digits)?,
        })
    }
}

struct Outcome {
    command: &'static str,
    inputs: Value,
    results: Value,
    text: String,
    diagnostics: Vec<String>,
    code: i32,
}

struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

fn require_n(n: i64, max: i64) -> Result<u32, UsageError> {
    if n < 1 {
        return Err(UsageError("n must be ≥ 1".into()));
    }
    if n > max {
        return Err(UsageError(format!("n must be ≤ {max}")));
    }
    Ok(n as u32)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Parses `args` (including the program name), runs the command and writes
/// to `out`/`err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(o) => {
            let written = match format {
                Format::Json => {
                    let doc = OutputDocument {
                        schema_version: SCHEMA_VERSION.into(),
                        command: o.command.into(),
                        inputs: o.inputs,
                        results: o.results,
                        diagnostics: o.diagnostics,
                    };
                    serde_json::to_string_pretty(&doc)
                        .map_err(std::io::Error::other)
                        .and_then(|s| writeln!(out, "{s}"))
                }
                Format::Text => {
                    for d in &o.diagnostics {
                        let _ = writeln!(err, "warning: {d}");
                    }
                    write!(out, "{}", o.text)
                }
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            o.code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, UsageError> {
    match cli.command {
        Command::Reduce { n } => cmd_reduce(n),
        Command::ClosedForm { n, digits } => cmd_closed_form(n, digits),
        Command::Eval {
            n,
            f,
            method,
            tol,
            samples,
            threads,
            csv,
        } => cmd_eval(
            n,
            &f,
            method,
            tol,
            samples,
            cli.seed,
            threads,
            csv.as_deref(),
        ),
        Command::Verify { n_max, suite, csv } => cmd_verify(n_max, suite, cli.seed, csv.as_deref()),
    }
}

fn cmd_reduce(n: i64) -> Result<Outcome, UsageError> {
    let n = require_n(n, REDUCE_MAX_N)?;
    let plan = reduction_plan(n)?;
    let results = ReduceResults {
        prefactor: to_fraction_string(plan.prefactor()),
        weights: plan
            .weights()
            .iter()
            .map(|w| w.weight.coeffs().iter().map(to_fraction_string).collect())
            .collect(),
    };
    let mut parts = vec![format!("prefactor {}", results.prefactor)];
    for w in plan.weights() {
        parts.push(format!("G{} = {}", w.shell.get(), w.weight));
    }
    Ok(Outcome {
        command: "reduce",
        inputs: json!({ "n": n }),
        results: to_value(&results),
        text: parts.join("; ") + "\n",
        diagnostics: Vec::new(),
        code: EXIT_OK,
    })
}

fn cmd_closed_form(n: i64, digits: u32) -> Result<Outcome, UsageError> {
    let n = require_n(n, CLOSED_FORM_MAX_N)?;
    if !(1..=50).contains(&digits) {
        return Err(UsageError(format!(
            "digits must be in 1..=50, got {digits}"
        )));
    }
    let v = closed_form(n)?;
    let results = ClosedFormResults {
        symbolic: v.to_string(),
        closed_form: ClosedFormJson::new(&v, digits)?,
    };
    let text = format!(
        "symbolic {}\ndecimal {}\n",
        results.symbolic, results.closed_form.decimal
    );
    Ok(Outcome {
        command: "closed-form",
        inputs: json!({ "n": n, "digits": digits }),
        results: to_value(&results),
        text,
        diagnostics: Vec::new(),
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct MethodRow<'a> {
    method: &'a str,
    value: f64,
    error_estimate: f64,
    effort: u64,
    seed: Option<u64>,
    converged: bool,
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    n: i64,
    spec: &str,
    method: EvalMethod,
    tol: f64,
    samples: u64,
    seed: u64,
    threads: Option<usize>,
    csv: Option<&Path>,
) -> Result<Outcome, UsageError> {
    let n = require_n(n, i64::from(u32::MAX))?;
    let f: Integrand = spec.parse()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(UsageError(format!("tol must be positive, got {tol}")));
    }
    let mut diagnostics = Vec::new();
    let mut results = EvalResults {
        reduced: None,
        mc: None,
        discrepancy: None,
        within_tolerance: None,
        exact: None,
        closed_form: None,
    };
    if matches!(method, EvalMethod::Reduced | EvalMethod::Both) {
        let r = integrate_reduced(n, &f, &QuadPolicy::default().with_tol(tol))?;
        if !r.converged {
            diagnostics.push(format!(
                "quadrature did not reach tolerance on shells {:?}",
                r.unconverged_shells
            ));
        }
        results.reduced = Some(r);
    }
    if matches!(method, EvalMethod::Mc | EvalMethod::Both) {
        results.mc = Some(mc_cube_with_threads(n, &f, samples, seed, threads)?);
    }
    let mut code = EXIT_OK;
    if let (Some(r), Some(m)) = (&results.reduced, &results.mc) {
        let d = (r.value - m.value).abs();
        let ok = d <= r.error_estimate.max(tol) + 4.0 * m.error_estimate;
        results.discrepancy = Some(d);
        results.within_tolerance = Some(ok);
        if !ok {
            code = EXIT_CHECK_FAILED;
        }
    }
    match &f {
        Integrand::Polynomial(p) => {
            results.exact = Some(to_fraction_string(&exact_poly_cube(n, p.poly())?));
        }
        Integrand::LogGamma if n <= CLOSED_FORM_MAX_N as u32 => {
            results.closed_form = Some(closed_form(n)?.numeric_value(15)?);
        }
        _ => {}
    }

    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, rep) in [("reduced", &results.reduced), ("mc", &results.mc)] {
        if let Some(r) = rep {
            text += &format!(
                "{name} {:.15} ± {:.3e} ({:?}, effort {})\n",
                r.value, r.error_estimate, r.method, r.effort
            );
            rows.push(MethodRow {
                method: name,
                value: r.value,
                error_estimate: r.error_estimate,
                effort: r.effort,
                seed: r.seed,
                converged: r.converged,
            });
        }
    }
    if let (Some(d), Some(ok)) = (results.discrepancy, results.within_tolerance) {
        text += &format!(
            "discrepancy {d:.3e} {}\n",
            if ok {
                "within tolerance"
            } else {
                "EXCEEDS tolerance"
            }
        );
    }
    if let Some(e) = &results.exact {
        text += &format!("exact {e}\n");
    }
    if let Some(c) = &results.closed_form {
        text += &format!("closed-form {c}\n");
    }
    if let Some(path) = csv {
        write_csv(path, &rows)?;
    }
    Ok(Outcome {
        command: "eval",
        inputs: json!({
            "n": n,
            "f": f.to_string(),
            "method": method,
            "tol": tol,
            "samples": samples,
            "seed": seed,
        }),
        results: to_value(&results),
        text,
        diagnostics,
        code,
    })
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    name: &'a str,
    n: u32,
    status: &'a str,
    witness: &'a str,
}

fn cmd_verify(
    n_max: u32,
    suite: Suite,
    seed: u64,
    csv: Option<&Path>,
) -> Result<Outcome, UsageError> {
    let opts = VerifyOptions {
        seed,
        ..VerifyOptions::default()
    };
    let checks = run_suite(suite, n_max, &opts)?;
    let passed = all_passed(&checks);
    let mut text = String::new();
    for c in &checks {
        let mark = if c.passed() { "PASS" } else { "FAIL" };
        text += &format!("{mark} {} {} n={}", c.suite, c.name, c.n);
        if let Some(w) = &c.witness {
            text += &format!(" [{w}]");
        }
        text.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    text += &format!("{} checks, {failed} failed\n", checks.len());
    if let Some(path) = csv {
        let rows: Vec<CheckRow<'_>> = checks
            .iter()
            .map(|c| CheckRow {
                suite: &c.suite,
                name: &c.name,
                n: c.n,
                status: if c.passed() { "pass" } else { "fail" },
                witness: c.witness.as_deref().unwrap_or(""),
            })
            .collect();
        write_csv(path, &rows)?;
    }
    Ok(Outcome {
        command: "verify",
        inputs: json!({ "n_max": n_max, "suite": suite, "seed": seed }),
        results: to_value(&VerifyResults { passed, checks }),
        text,
        diagnostics: Vec::new(),
        code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), UsageError> {
    let fail =
        |e: &dyn std::fmt::Display| UsageError(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(|e| fail(&e))?;
    for r in rows {
        w.serialize(r).map_err(|e| fail(&e))?;
    }
    w.flush().map_err(|e| fail(&e))
}
