mod config;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fracpolylog::literal::parse_complex;
use fracpolylog::validation::{jump_closed_form, run_selfcheck};
use fracpolylog::{
    eval_auto, eval_cover, eval_method, eval_on_cut, transport, CoverPoint, CutSide, DomainError,
    Error, Method, Order, PathWord,
};
use num_complex::Complex64;
use rayon::prelude::*;

use config::{CliConfig, OutputFormat};
use output::{Record, Value};

const CONFIG_ENV: &str = "FRACPOLYLOG_CONFIG";

#[derive(Parser, Debug)]
#[command(
    name = "fracpolylog",
    version,
    about = "Fractional polylogarithm Li_alpha(z)"
)]
struct Cli {
    /// Output format: json, csv or plain.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// key=value config file (default: $FRACPOLYLOG_CONFIG).
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Override one config key, e.g. --set target_abs_err=1e-12.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Order, as a complex literal (a, a+bi, bi).
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Argument, as a complex literal.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the principal branch at one point.
    Eval {
        #[command(flatten)]
        point: PointArgs,
        /// Force a backend: series, appell, hankel, ml, zeta, closed.
        #[arg(long)]
        method: Option<Method>,
        /// Boundary value from above or below for z on the cut (1, inf).
        #[arg(long)]
        side: Option<CutSide>,
    },
    /// Evaluate on the sheet reached along a path word.
    Monodromy {
        #[command(flatten)]
        point: PointArgs,
        /// Path word such as "c1 c0^-2"; empty for the principal sheet.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Jump across the cut at x > 1, measured and in closed form.
    Jump {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        x: f64,
    },
    /// Evaluate on a rectangular grid of z values.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Real parts a:b:n (n points from a to b inclusive).
        #[arg(long = "z-re", allow_hyphen_values = true)]
        z_re: String,
        /// Imaginary parts c:d:m.
        #[arg(long = "z-im", allow_hyphen_values = true, default_value = "0:0:1")]
        z_im: String,
    },
    /// Run the built-in consistency checks.
    Selfcheck {
        /// Emit one JSON report per line.
        #[arg(long)]
        json: bool,
        /// Only run checks whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. } => 3,
            Error::Domain(_) | Error::Unsupported(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load_config(cli: &Cli) -> Result<CliConfig, Failure> {
    let mut cfg = CliConfig::default();
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(Into::into));
    if let Some(path) = path {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply_text(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    for item in &cli.overrides {
        cfg.assign(item).map_err(Failure::usage)?;
    }
    if cli.format.is_some() {
        cfg.output_format = cli.format;
    }
    cfg.validate().map_err(Failure::usage)?;
    Ok(cfg)
}

fn literal(text: &str) -> Result<Complex64, Failure> {
    parse_complex(text).map_err(|e| Failure::usage(e.to_string()))
}

/// Inclusive linear grid `a:b:n`.
fn parse_range(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::usage(format!("malformed grid spec '{spec}', expected a:b:n"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

fn skip_reason(e: &Error) -> &'static str {
    match e {
        Error::Domain(DomainError::OnBranchCut) => "OnBranchCut",
        Error::Domain(DomainError::BranchPoint) => "BranchPoint",
        Error::Domain(_) => "Domain",
        Error::Unsupported(_) => "Unsupported",
        Error::Convergence { .. } => "Convergence",
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = load_config(&cli)?;
    let tol = cfg.tolerance;
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Eval {
            point,
            method,
            side,
        } => {
            let alpha = literal(&point.alpha)?;
            let z = literal(&point.z)?;
            let a = Order::new(alpha);
            let r = match side {
                Some(side) if z.re > 1.0 && z.im == 0.0 => eval_on_cut(a, z.re, side, &tol)?,
                _ => match method {
                    Some(m) => eval_method(m, a, z, &tol)?,
                    None => eval_auto(a, z, &tol)?,
                },
            };
            let rec = Record::new()
                .field("alpha", Value::Complex(alpha))
                .field("z", Value::Complex(z))
                .field("value", Value::Complex(r.value))
                .field("err_estimate", Value::Real(r.err_estimate))
                .field("method", Value::Text(r.method.to_string()));
            output::write_records(
                &mut out,
                cfg.output_format.unwrap_or(OutputFormat::Json),
                &[rec],
            );
        }
        Command::Monodromy { point, word } => {
            let alpha = literal(&point.alpha)?;
            let z = literal(&point.z)?;
            let word: PathWord = word
                .parse()
                .map_err(|e: fracpolylog::domain::WordParseError| Failure::usage(e.to_string()))?;
            let a = Order::new(alpha);
            let v = transport(&word, a)?;
            let p = CoverPoint::with_clearance(z, word.clone(), tol.eps_cut)?;
            let r = eval_cover(a, &p, &tol)?;
            let mut rec = Record::new()
                .field("alpha", Value::Complex(alpha))
                .field("z", Value::Complex(z))
                .field("word", Value::Text(word.to_string()))
                .field("li_coeff", Value::Complex(v.li_coeff()));
            let m: Vec<(i64, Complex64)> = v.m_coeffs().iter().map(|(&k, &c)| (k, c)).collect();
            rec = rec
                .field("m_coeffs", Value::Indexed(m))
                .field("value", Value::Complex(r.value))
                .field("err_estimate", Value::Real(r.err_estimate))
                .field("method", Value::Text(r.method.to_string()));
            output::write_records(
                &mut out,
                cfg.output_format.unwrap_or(OutputFormat::Json),
                &[rec],
            );
        }
        Command::Jump { alpha, x } => {
            let alpha = literal(&alpha)?;
            let a = Order::new(alpha);
            a.require_non_integer(tol.eps_int)?;
            if x.is_nan() || x <= 1.0 {
                return Err(Error::Domain(DomainError::Other(format!(
                    "jump needs x > 1, got {x}"
                )))
                .into());
            }
            let up = eval_on_cut(a, x, CutSide::Above, &tol)?;
            let down = eval_on_cut(a, x, CutSide::Below, &tol)?;
            let measured = up.value - down.value;
            let closed = jump_closed_form(alpha, x)?;
            let rec = Record::new()
                .field("alpha", Value::Complex(alpha))
                .field("x", Value::Real(x))
                .field("measured", Value::Complex(measured))
                .field("closed_form", Value::Complex(closed))
                .field("difference", Value::Real((measured - closed).norm()))
                .field(
                    "err_estimate",
                    Value::Real(up.err_estimate + down.err_estimate),
                )
                .field("method", Value::Text(up.method.to_string()));
            output::write_records(
                &mut out,
                cfg.output_format.unwrap_or(OutputFormat::Json),
                &[rec],
            );
        }
        Command::Table { alpha, z_re, z_im } => {
            let alpha = literal(&alpha)?;
            let re = parse_range(&z_re)?;
            let im = parse_range(&z_im)?;
            let a = Order::new(alpha);
            let points: Vec<Complex64> = re
                .iter()
                .flat_map(|&x| im.iter().map(move |&y| Complex64::new(x, y)))
                .collect();
            let rows: Vec<Record> = points
                .par_iter()
                .map(|&z| {
                    let base = Record::new()
                        .field("z_re", Value::Real(z.re))
                        .field("z_im", Value::Real(z.im));
                    match eval_auto(a, z, &tol) {
                        Ok(r) => base
                            .field("val_re", Value::Real(r.value.re))
                            .field("val_im", Value::Real(r.value.im))
                            .field("err", Value::Real(r.err_estimate))
                            .field("method", Value::Text(r.method.to_string())),
                        Err(e) => base
                            .field("val_re", Value::Missing)
                            .field("val_im", Value::Missing)
                            .field("err", Value::Missing)
                            .field(
                                "method",
                                Value::Text(format!("skipped:{}", skip_reason(&e))),
                            ),
                    }
                })
                .collect();
            output::write_records(
                &mut out,
                cfg.output_format.unwrap_or(OutputFormat::Csv),
                &rows,
            );
        }
        Command::Selfcheck { json, filter } => {
            let reports: Vec<_> = run_selfcheck(&tol)
                .into_iter()
                .filter(|r| filter.as_deref().is_none_or(|f| r.name.contains(f)))
                .collect();
            if reports.is_empty() {
                return Err(Failure::usage("no checks match the filter"));
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if json || cfg.output_format == Some(OutputFormat::Json) {
                output::write_json_lines(&mut out, &reports);
            } else {
                output::write_summary(&mut out, &reports);
            }
            if failed > 0 {
                return Err(Failure {
                    code: 3,
                    message: format!("{failed} of {} checks failed", reports.len()),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
