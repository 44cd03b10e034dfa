//! The `gca` command-line driver.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage or input error,
//! 3 internal failure. Errors are reported on stderr as one JSON object
//! `{"error": <kind>, "message": <text>}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use super::ast::{parse, Expr};
use super::eval::{eval, eval_on_vacuum, required_qudits, Value};
use super::json::{cyclo_to_json, element_to_json, state_to_json, to_string};
use super::verify::{run_verify, Selection};
use crate::algebra::Element;
use crate::diagram::{emit_svg, emit_tikz, layout_expr, Geometry};
use crate::error::{Error, Result};
use crate::scalar::{gauss_diagnostics, Backend, Cyclo, ScalarContext};
use crate::state::State;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
    Tikz,
}

#[derive(Debug, Parser)]
#[command(name = "gca", version, about = "Exact computations in generalized Clifford algebras")]
struct Cli {
    /// Qudit dimension N (at least 2).
    #[arg(long = "N", global = true, default_value_t = 3)]
    dim: u32,

    /// Number of qudits n; inferred from the expression when omitted (verify: 2).
    #[arg(long = "n", global = true)]
    qudits: Option<usize>,

    /// Equality backend; the GCA_BACKEND environment variable takes precedence.
    #[arg(long, global = true, default_value = "exact", value_parser = parse_backend)]
    backend: Backend,

    /// Output format: text or json; svg or tikz for `render`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the output to a file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run check families and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Selection,
    },
    /// Print the normal form of an expression.
    Nf {
        #[arg(long)]
        expr: String,
    },
    /// Apply an operator word (right to left) to the ground state and print the state.
    State {
        #[arg(long)]
        word: String,
    },
    /// Print the vacuum expectation value <vac|x|vac>.
    Vev {
        #[arg(long)]
        expr: String,
    },
    /// Print the quadratic Gauss-sum diagnostics for N.
    Gauss,
    /// Render a braid word or state expression as a diagram.
    Render {
        #[arg(long)]
        word: String,
        /// Strand spacing.
        #[arg(long, default_value_t = 40.0)]
        pitch: f64,
        /// Height of one row.
        #[arg(long, default_value_t = 40.0)]
        row_height: f64,
        #[arg(long, default_value_t = 20.0)]
        margin: f64,
        /// Close the diagram with the <vac| cups.
        #[arg(long)]
        measure: bool,
    },
}

fn parse_backend(s: &str) -> std::result::Result<Backend, String> {
    s.parse::<Backend>().map_err(|e| e.to_string())
}

/// Exit status for an error: internal failures are 3, everything the user can fix is 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RootOfUnity { .. }
        | Error::DivisionByZero
        | Error::Io(_)
        | Error::NotInverse
        | Error::ZeroConstantTerm(_)
        | Error::AlgebraMismatch => 3,
        _ => 2,
    }
}

fn error_json(kind: &str, message: &str) -> String {
    to_string(&serde_json::json!({ "error": kind, "message": message }))
}

/// Runs the CLI with process stdout/stderr and returns the exit status.
pub fn cli_run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    cli_run_with(argv, &mut out, &mut err)
}

/// As [`cli_run`], writing to the given streams.
pub fn cli_run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "{}", error_json("usage", first));
            return 2;
        }
    };
    match execute(cli) {
        Ok((text, passed)) => match write_output(&text, out) {
            Ok(()) => {
                if passed {
                    0
                } else {
                    1
                }
            }
            Err(e) => report(err, &e),
        },
        Err(e) => report(err, &e),
    }
}

fn report(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string()));
    exit_code(e)
}

struct Output {
    body: String,
    path: Option<PathBuf>,
}

fn write_output(o: &Output, out: &mut dyn Write) -> Result<()> {
    match &o.path {
        Some(p) => std::fs::write(p, &o.body)?,
        None => out.write_all(o.body.as_bytes())?,
    }
    Ok(())
}

fn effective_backend(flag: Backend) -> Result<Backend> {
    match std::env::var("GCA_BACKEND") {
        Ok(v) if !v.is_empty() => v.parse(),
        _ => Ok(flag),
    }
}

fn data_format(f: Option<Format>) -> Result<Format> {
    match f {
        None | Some(Format::Text) => Ok(Format::Text),
        Some(Format::Json) => Ok(Format::Json),
        Some(other) => Err(Error::Precondition(format!(
            "format {other:?} is only available for render"
        ))),
    }
}

fn execute(cli: Cli) -> Result<(Output, bool)> {
    let backend = effective_backend(cli.backend)?;
    let parse_with_n = |text: &str| -> Result<(Expr, usize)> {
        let e = parse(text)?;
        let n = cli.qudits.unwrap_or_else(|| required_qudits(&e));
        Ok((e, n))
    };
    let mut passed = true;
    let body = match &cli.command {
        Command::Verify { suite } => {
            let fmt = data_format(cli.format)?;
            let report = run_verify(cli.dim, cli.qudits.unwrap_or(2), *suite, backend)?;
            passed = report.passed();
            match fmt {
                Format::Json => to_string(&report.to_json()) + "\n",
                _ => report.to_text(),
            }
        }
        Command::Nf { expr } => {
            let fmt = data_format(cli.format)?;
            let ctx = ScalarContext::new(cli.dim)?;
            let (e, n) = parse_with_n(expr)?;
            let v = match eval(&e, &ctx, n)? {
                Value::Scalar(c) => Value::Element(Element::scalar(&ctx, n, c)),
                v => v,
            };
            render_value(&ctx, &v, fmt, backend)
        }
        Command::State { word } => {
            let fmt = data_format(cli.format)?;
            let ctx = ScalarContext::new(cli.dim)?;
            let (e, n) = parse_with_n(word)?;
            let s = eval_on_vacuum(&e, &ctx, n)?;
            render_value(&ctx, &Value::State(s), fmt, backend)
        }
        Command::Vev { expr } => {
            let fmt = data_format(cli.format)?;
            let ctx = ScalarContext::new(cli.dim)?;
            let (e, n) = parse_with_n(expr)?;
            let s = eval_on_vacuum(&e, &ctx, n)?;
            let v = State::ground(&ctx, n)?.inner(&s)?;
            render_value(&ctx, &Value::Scalar(v), fmt, backend)
        }
        Command::Gauss => {
            let fmt = data_format(cli.format)?;
            gauss_output(cli.dim, fmt, backend)?
        }
        Command::Render {
            word,
            pitch,
            row_height,
            margin,
            measure,
        } => {
            let (e, n) = parse_with_n(word)?;
            let geom = Geometry {
                pitch: *pitch,
                row_height: *row_height,
                margin: *margin,
            };
            if !(geom.pitch > 0.0 && geom.row_height > 0.0 && geom.margin >= 0.0) {
                return Err(Error::Precondition("geometry constants must be positive".into()));
            }
            let lay = layout_expr(&e, n, *measure)?;
            match cli.format {
                None | Some(Format::Svg) => emit_svg(&lay, &geom),
                Some(Format::Tikz) => emit_tikz(&lay, &geom),
                Some(other) => {
                    return Err(Error::Precondition(format!("render supports svg or tikz, not {other:?}")))
                }
            }
        }
    };
    Ok((Output { body, path: cli.output.clone() }, passed))
}

fn render_value(ctx: &Arc<ScalarContext>, v: &Value, fmt: Format, backend: Backend) -> String {
    let mut s = match (fmt, v) {
        (Format::Json, Value::Scalar(c)) => to_string(&cyclo_to_json(c)),
        (Format::Json, Value::Element(x)) => to_string(&element_to_json(x)),
        (Format::Json, Value::State(st)) => to_string(&state_to_json(st)),
        (_, Value::Scalar(c)) => scalar_text(ctx, c, backend),
        (_, Value::Element(x)) => element_text(x, backend),
        (_, Value::State(st)) => state_text(st, backend),
        (_, Value::Op(_)) => unreachable!("operators never escape evaluation"),
    };
    s.push('\n');
    s
}

fn gauss_output(dim: u32, fmt: Format, backend: Backend) -> Result<String> {
    let r = gauss_diagnostics(dim)?;
    let ctx = ScalarContext::new(dim)?;
    Ok(match fmt {
        Format::Json => {
            to_string(&serde_json::json!({
                "N": dim,
                "sum_a": cyclo_to_json(&r.sum_a),
                "sum_b": cyclo_to_json(&r.sum_b),
                "vanishes_a": r.vanishes_a,
                "vanishes_b": r.vanishes_b,
                "hansen_residuals": [r.hansen_residuals[0], r.hansen_residuals[1]],
            })) + "\n"
        }
        _ => format!(
            "gauss N={dim}\nsum_a = {}\nsum_b = {}\nvanishes_a = {}\nvanishes_b = {}\nhansen_residuals = {:.3e} {:.3e}\n",
            scalar_text(&ctx, &r.sum_a, backend),
            scalar_text(&ctx, &r.sum_b, backend),
            r.vanishes_a,
            r.vanishes_b,
            r.hansen_residuals[0],
            r.hansen_residuals[1]
        ),
    })
}

/// Decimal rendering of a complex number, rounded to 12 places.
pub fn complex_text(z: Complex64) -> String {
    let clean = |v: f64| {
        let r = (v * 1e12).round() / 1e12;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) => format!("({re}{}{}i)", if im < 0.0 { "-" } else { "+" }, im.abs()),
    }
}

pub fn scalar_text(ctx: &ScalarContext, c: &Cyclo, backend: Backend) -> String {
    match backend {
        Backend::Exact => ctx.format_scalar(c),
        Backend::Float => complex_text(c.embed()),
    }
}

/// Joins `coefficient*basis` terms with ` + ` / ` - `.
fn join_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (i, (coeff, basis)) in terms.enumerate() {
        let term = match (coeff.as_str(), basis.is_empty()) {
            (c, true) => c.to_string(),
            ("1", false) => basis,
            ("-1", false) => format!("-{basis}"),
            (c, false) => format!("{c}*{basis}"),
        };
        if i == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Normal form as text, e.g. `q^2*c[1]*c[2]`.
pub fn element_text(x: &Element, backend: Backend) -> String {
    let ctx = x.ctx();
    join_terms(x.terms().iter().map(|(m, c)| {
        let basis = if m.is_identity() { String::new() } else { m.to_string() };
        (scalar_text(ctx, c, backend), basis)
    }))
}

/// State as text, e.g. `sqrtN^-1*|0,0> - sqrtN^-1*|1,1>`.
pub fn state_text(s: &State, backend: Backend) -> String {
    let ctx = s.ctx();
    join_terms(s.coeffs().iter().map(|(a, c)| {
        let label: Vec<String> = a.iter().map(u32::to_string).collect();
        (scalar_text(ctx, c, backend), format!("|{}>", label.join(",")))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gca").chain(args.iter().copied());
        let code = cli_run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn normal_form_of_reordered_pair() {
        let (code, out, _) = run(&["nf", "--expr", "c[2]*c[1]", "--N", "3", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "q^2*c[1]*c[2]\n");
    }

    #[test]
    fn state_of_the_entangler() {
        let (code, out, _) = run(&["state", "--word", "b[2,3]", "--N", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        assert!(out.contains("|0,0>") && out.contains("|1,1>"), "{out}");
    }

    #[test]
    fn float_backend_prints_decimals() {
        let (code, out, _) = run(&["vev", "--expr", "b[1,2]", "--N", "2", "--backend", "float"]);
        assert_eq!(code, 0);
        // the twist eigenvalue omega^(-1/2), printed as a decimal complex number
        assert!(out.contains('.'), "{out}");
    }

    #[test]
    fn gauss_reports_vanishing_sum() {
        let (code, out, _) = run(&["gauss", "--N", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("sum_a = 0\n"));
        assert!(out.contains("vanishes_a = true"));
    }

    #[test]
    fn errors_are_json_with_exit_codes() {
        let (code, _, err) = run(&["nf", "--expr", "c[1"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "syntax");
        let (code, _, err) = run(&["nf", "--expr", "E[1]"]);
        assert_eq!(code, 2);
        assert!(err.contains("context-misuse"));
        let (code, _, err) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"usage\""));
        let (code, _, _) = run(&["nf", "--expr", "c[1]", "--N", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn verify_suite_exits_zero() {
        let (code, out, _) = run(&["verify", "--N", "2", "--n", "1", "--suite", "ybe"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("verify N=2 n=1 backend=exact\n"));
    }

    #[test]
    fn render_svg_to_stdout() {
        let (code, out, _) = run(&["render", "--word", "b[1,2]", "--n", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("<svg"));
        let (code, _, _) = run(&["render", "--word", "b[1,2]", "--format", "json"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn text_joins_signs() {
        let ctx = ScalarContext::new(2).unwrap();
        let x = &Element::generator(&ctx, 1, 1, 1).unwrap() - &Element::identity(&ctx, 1);
        assert_eq!(element_text(&x, Backend::Exact), "-1 + c[1]");
    }
}
