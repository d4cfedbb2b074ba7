//! The `ibt` command-line front end.
//!
//! Exit codes: 0 on success, 1 when an identity is falsified or the two
//! term-computation methods disagree, 2 on usage errors.

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::identities::{verify_grid_perturbed, Grid, IdentityId};
use crate::recurrences::{Modulus, SequenceSpec};
use crate::transform::{iterated_fibonacci_spec, iterated_lucas_spec, TransformParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ibt",
    version,
    about = "Iterated binomial transforms of k-Lucas and k-Fibonacci sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the first terms of a transformed sequence
    Emit(EmitArgs),
    /// Print a single term, optionally reduced modulo m
    Term(TermArgs),
    /// Check an identity over a (k, r, n) grid
    Verify(VerifyArgs),
    /// Time iteration against matrix powering
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    KLucas,
    KFibonacci,
    /// k-Lucas with k = 1
    Lucas,
    /// k-Lucas with k = 2
    PellLucas,
    /// k-Fibonacci with k = 2
    Pell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Iterate,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchMethod {
    Iterate,
    Matrix,
    Both,
}

#[derive(Debug, Args)]
struct SequenceArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Required for k-lucas and k-fibonacci; must match the preset otherwise
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, default_value_t = 0)]
    r: u64,
}

#[derive(Debug, Args)]
struct EmitArgs {
    #[command(flatten)]
    seq: SequenceArgs,
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    #[arg(long, value_enum, default_value_t = Method::Iterate)]
    method: Method,
}

#[derive(Debug, Args)]
struct TermArgs {
    #[command(flatten)]
    seq: SequenceArgs,
    #[arg(long)]
    n: u64,
    #[arg(long = "mod")]
    modulus: Option<BigInt>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    identity: String,
    #[arg(long, default_value = "1..5", allow_hyphen_values = true)]
    k_range: String,
    #[arg(long, default_value = "0..4")]
    r_range: String,
    #[arg(long, default_value_t = 32)]
    n_max: u64,
    #[arg(long)]
    json: bool,
    /// Adds a constant to every closed-form value (exercises the failure path)
    #[arg(long, hide = true, allow_hyphen_values = true, default_value = "0")]
    perturb: BigInt,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    seq: SequenceArgs,
    #[arg(long)]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = BenchMethod::Both)]
    method: BenchMethod,
}

struct UsageError(String);

impl SequenceArgs {
    fn resolve(&self) -> Result<SequenceSpec, UsageError> {
        let (lucas, preset) = match self.family {
            Family::KLucas => (true, None),
            Family::KFibonacci => (false, None),
            Family::Lucas => (true, Some(1)),
            Family::PellLucas => (true, Some(2)),
            Family::Pell => (false, Some(2)),
        };
        let k = match (preset, self.k) {
            (None, Some(k)) => k,
            (None, None) => return Err(UsageError("--k is required for this family".into())),
            (Some(p), None) => p,
            (Some(p), Some(k)) if k == p => k,
            (Some(p), Some(k)) => {
                return Err(UsageError(format!(
                    "this family fixes k = {p}, got --k {k}"
                )))
            }
        };
        let params = TransformParams::new(k, self.r).map_err(|e| UsageError(e.to_string()))?;
        Ok(if lucas {
            iterated_lucas_spec(&params)
        } else {
            iterated_fibonacci_spec(&params)
        })
    }
}

/// Parses `"A..B"` with `A ≤ B`.
pub fn parse_range<T>(s: &str) -> Option<RangeInclusive<T>>
where
    T: FromStr + PartialOrd,
{
    let (a, b) = s.split_once("..")?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a <= b).then_some(a..=b)
}

/// Renders terms in the given format, newline-terminated.
pub fn format_terms(terms: &[BigInt], format: OutputFormat) -> String {
    let strs: Vec<String> = terms.iter().map(BigInt::to_string).collect();
    match format {
        OutputFormat::Plain => strs.join(" ") + "\n",
        OutputFormat::Csv => strs.join(",") + "\n",
        OutputFormat::Json => json!({ "terms": strs }).to_string() + "\n",
        OutputFormat::Bfile => strs
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{i} {s}\n"))
            .collect(),
    }
}

/// Parses an OEIS-style b-file written by `emit --format bfile`. Indices
/// must run 0, 1, 2, … in order; blank lines and `#` comments are ignored.
pub fn parse_bfile(text: &str) -> Result<Vec<BigInt>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(format!("line {}: expected `<index> <value>`", lineno + 1));
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| format!("line {}: bad index `{idx}`", lineno + 1))?;
        if idx != out.len() {
            return Err(format!(
                "line {}: index {idx} out of sequence (expected {})",
                lineno + 1,
                out.len()
            ));
        }
        let val: BigInt = val
            .parse()
            .map_err(|_| format!("line {}: bad value `{val}`", lineno + 1))?;
        out.push(val);
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Emit(a) => emit(&a, out),
        Command::Term(a) => term(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Bench(a) => bench(&a, out, err),
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FALSIFIED
        }
    };
    let _ = out.flush();
    code
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn emit(a: &EmitArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = a.seq.resolve()?;
    let terms = match a.method {
        Method::Iterate => spec.terms(a.count),
        Method::Matrix => (0..a.count as u64).map(|n| spec.term_at(n)).collect(),
    };
    out.write_all(format_terms(&terms, a.format).as_bytes())?;
    Ok(EXIT_OK)
}

fn term(a: &TermArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = a.seq.resolve()?;
    let value = match &a.modulus {
        Some(m) => {
            let m = Modulus::new(m.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
            spec.term_at_mod(a.n, &m)
        }
        None => spec.term_at(a.n),
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let identity: IdentityId = a
        .identity
        .parse()
        .map_err(|e: crate::Error| Failure::Usage(e.to_string()))?;
    let k = parse_range::<i64>(&a.k_range)
        .ok_or_else(|| Failure::Usage(format!("bad --k-range `{}`, expected A..B", a.k_range)))?;
    let r = parse_range::<u64>(&a.r_range)
        .ok_or_else(|| Failure::Usage(format!("bad --r-range `{}`, expected A..B", a.r_range)))?;
    let report = verify_grid_perturbed(identity, &Grid::new(k, r, a.n_max), &a.perturb)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if a.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(if report.is_success() {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    })
}

/// `1, 2, 4, …` up to `n_max`, ending exactly at `n_max`; `[0]` when
/// `n_max = 0`.
pub fn doubling_schedule(n_max: u64) -> Vec<u64> {
    if n_max == 0 {
        return vec![0];
    }
    let mut v: Vec<u64> = std::iter::successors(Some(1u64), |&n| n.checked_mul(2))
        .take_while(|&n| n <= n_max)
        .collect();
    if v.last() != Some(&n_max) {
        v.push(n_max);
    }
    v
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let spec = a.seq.resolve()?;
    let schedule = doubling_schedule(a.n_max);
    let mut rows = Vec::with_capacity(schedule.len());
    for &n in &schedule {
        let (by_iter, t_iter) = timed(|| spec.terms(n as usize + 1).pop().expect("non-empty"));
        let (by_matrix, t_matrix) = timed(|| spec.term_at(n));
        if by_iter != by_matrix {
            writeln!(
                err,
                "error: methods disagree at n={n}: iterate={by_iter} matrix={by_matrix}"
            )?;
            return Ok(EXIT_FALSIFIED);
        }
        rows.push((n, t_iter, t_matrix, by_iter.to_string().len()));
    }
    let us = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e6);
    let (show_iter, show_matrix) = match a.method {
        BenchMethod::Iterate => (true, false),
        BenchMethod::Matrix => (false, true),
        BenchMethod::Both => (true, true),
    };
    let mut header = format!("{:>12} {:>8}", "n", "digits");
    if show_iter {
        header += &format!(" {:>14}", "iterate_us");
    }
    if show_matrix {
        header += &format!(" {:>14}", "matrix_us");
    }
    writeln!(out, "{header} {:>5}", "check")?;
    for (n, ti, tm, digits) in rows {
        let mut line = format!("{n:>12} {digits:>8}");
        if show_iter {
            line += &format!(" {:>14}", us(ti));
        }
        if show_matrix {
            line += &format!(" {:>14}", us(tm));
        }
        writeln!(out, "{line} {:>5}", "ok")?;
    }
    Ok(EXIT_OK)
}
