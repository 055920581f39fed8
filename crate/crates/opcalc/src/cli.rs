//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opcalc_core::diffop::decompose;
use opcalc_core::{ParamPoly, Rational, TruncMatrix};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::family::{build, Built, FamilyKind, FamilyParams, RingChoice, RingKind};
use crate::json::{matrix_from_json, matrix_to_json, poly_to_json, rep_to_json, AnyMatrix, CliRing};
use crate::literal::parse_expr;
use crate::render;
use crate::suites::{run_suite, Suite, SuiteCtx, SuiteOutput};

#[derive(Parser, Debug)]
#[command(name = "opcalc", version, about = "Exact infinite-matrix operator calculus for polynomial sequences")]
pub struct Cli {
    /// Number of exact rows
    #[arg(long, global = true, env = "OPCALC_ORDER", default_value_t = 32, value_parser = parse_order)]
    pub order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Coefficient ring: auto, rational, params or params:<names>
    #[arg(long, global = true, default_value = "auto")]
    pub ring: RingChoice,
    /// Seed for the randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if n < 2 {
        return Err("order must be at least 2".into());
    }
    Ok(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
pub enum Emit {
    #[value(name = "rows")]
    Rows,
    M,
    P,
    L,
    Q,
    #[value(name = "recurrence")]
    Recurrence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family and print its rows or one of its operators
    Family {
        #[arg(value_enum)]
        name: FamilyKind,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Emit::Rows)]
        emit: Emit,
    },
    /// Print an operator of a family
    Ops {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Emit::M)]
        emit: Emit,
    },
    /// Differential-operator representation of an index-0 matrix
    Decompose(DecomposeArgs),
    /// Run an identity suite
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Evaluate u_k(t) exactly
    Eval {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Matrix JSON file, `-` for standard input
    #[arg(long)]
    pub input: PathBuf,
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// `Ok(false)` when an identity check failed.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Family { name, params, emit } => family(cli, *name, params, *emit, out),
        Command::Ops { family: name, params, emit } => family(cli, *name, params, *emit, out),
        Command::Decompose(args) => decompose_cmd(cli, args, out),
        Command::Check { suite, family, params } => check(cli, *suite, *family, params, out),
        Command::Eval { family, params, k, t } => eval(cli, *family, params, *k, t, out),
    }
}

fn ring_for(cli: &Cli, params: &FamilyParams, extra: &[String]) -> Result<RingKind, CliError> {
    let mut symbols = params.symbols()?;
    symbols.extend(extra.iter().filter(|s| !symbols.contains(s)).cloned().collect::<Vec<_>>());
    cli.ring.resolve(&symbols)
}

fn family(cli: &Cli, kind: FamilyKind, params: &FamilyParams, emit: Emit, out: &mut dyn Write) -> Result<bool, CliError> {
    match ring_for(cli, params, &[])? {
        RingKind::Rational => emit_family(cli, &build::<Rational>(kind, params, cli.order)?, emit, out),
        RingKind::Params => emit_family(cli, &build::<ParamPoly>(kind, params, cli.order)?, emit, out),
    }
}

fn emit_family<R: CliRing>(cli: &Cli, b: &Built<R>, emit: Emit, out: &mut dyn Write) -> Result<bool, CliError> {
    let op = |m: &TruncMatrix<R>| match cli.format {
        Format::Json => format!("{:#}\n", matrix_to_json(m)),
        Format::Table => render::matrix(m),
    };
    let text = match emit {
        Emit::Rows => match cli.format {
            Format::Json => {
                let rows: Vec<Value> = b.a.row_polys().iter().map(poly_to_json).collect();
                format!("{:#}\n", json!({ "family": b.kind.name(), "matrix": matrix_to_json(&b.a), "polys": rows }))
            }
            Format::Table => render::rows(&b.a),
        },
        Emit::M => op(&b.pair.m),
        Emit::P => op(&b.pair.p),
        Emit::L => op(&b.pair.l),
        Emit::Q => op(&b.pair.q),
        Emit::Recurrence => match cli.format {
            Format::Json => format!("{:#}\n", json!({ "shift": b.shift_name, "L": matrix_to_json(&b.pair.l) })),
            Format::Table => render::recurrence(&b.pair.l, if b.shift_name == "X" { "t" } else { b.shift_name }),
        },
    };
    out.write_all(text.as_bytes())?;
    Ok(true)
}

fn decompose_cmd(cli: &Cli, args: &DecomposeArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut text = String::new();
    if args.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(&args.input)?;
    }
    let v: Value = serde_json::from_str(&text)?;
    match matrix_from_json(&v)? {
        AnyMatrix::Rational(m) => print_rep(cli, &m, out),
        AnyMatrix::Params(m) => print_rep(cli, &m, out),
    }
}

fn print_rep<R: CliRing>(cli: &Cli, m: &TruncMatrix<R>, out: &mut dyn Write) -> Result<bool, CliError> {
    let rep = decompose(m)?;
    match cli.format {
        Format::Json => writeln!(out, "{}", rep_to_json(&rep))?,
        Format::Table => {
            for (k, p) in rep.ps().iter().enumerate() {
                writeln!(out, "p_{k} = {}", render::poly(p))?;
            }
        }
    }
    Ok(true)
}

fn check(cli: &Cli, suite: Suite, kind: Option<FamilyKind>, params: &FamilyParams, out: &mut dyn Write) -> Result<bool, CliError> {
    let ctx = SuiteCtx { order: cli.order, seed: cli.seed, family: kind, params: params.clone(), ring: cli.ring.clone() };
    let result = run_suite(suite, &ctx)?;
    write_reports(cli.format, &result, out)?;
    Ok(result.passed())
}

pub fn write_reports(format: Format, result: &SuiteOutput, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{:#}", serde_json::to_value(result)?)?,
        Format::Table => {
            for r in &result.reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                write!(out, "{status} {}: {}", r.suite, r.identity)?;
                if let Some((row, col)) = r.at {
                    write!(out, " at ({row}, {col})")?;
                }
                if let Some(d) = &r.detail {
                    write!(out, ": {d}")?;
                }
                writeln!(out)?;
            }
            for n in &result.notes {
                writeln!(out, "note: {n}")?;
            }
            let failed = result.reports.iter().filter(|r| !r.pass).count();
            writeln!(out, "{} passed, {failed} failed", result.reports.len() - failed)?;
        }
    }
    Ok(())
}

fn eval(cli: &Cli, kind: FamilyKind, params: &FamilyParams, k: usize, t: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    if k >= cli.order {
        return Err(CliError::Usage(format!("k = {k} is not below the order {}", cli.order)));
    }
    let t = parse_expr(t)?;
    let t_symbols: Vec<String> = t.vars().to_vec();
    match ring_for(cli, params, &t_symbols)? {
        RingKind::Rational => eval_in::<Rational>(cli, kind, params, k, &t, out),
        RingKind::Params => eval_in::<ParamPoly>(cli, kind, params, k, &t, out),
    }
}

fn eval_in<R: CliRing>(cli: &Cli, kind: FamilyKind, params: &FamilyParams, k: usize, t: &ParamPoly, out: &mut dyn Write) -> Result<bool, CliError> {
    let b = build::<R>(kind, params, cli.order)?;
    let t = R::lift(t)?;
    let value = b.a.row_poly(k)?.eval(&t);
    match cli.format {
        Format::Json => writeln!(out, "{}", json!({ "k": k, "t": t.to_json(), "value": value.to_json() }))?,
        Format::Table => writeln!(out, "{value}")?,
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("opcalc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn order_must_be_at_least_two() {
        assert_eq!(call(&["--order", "1", "check", "pincherle"]).0, 2);
        assert_eq!(call(&["--order", "x", "check", "pincherle"]).0, 2);
    }

    #[test]
    fn emit_is_case_insensitive() {
        let (code, out, _) = call(&["ops", "--family", "appell", "--f-egf", "1", "--order", "3", "--emit", "m"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# index bound -1"));
    }

    #[test]
    fn eval_rejects_k_beyond_order() {
        let (code, _, err) = call(&["eval", "--family", "appell", "--f-egf", "1", "--order", "4", "--k", "4", "--t", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("order"));
    }
}
