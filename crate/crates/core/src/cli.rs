//! Command-line front end.
//!
//! Exit status: 0 success (every executed check passed), 1 an identity check
//! failed, 2 usage error, 3 domain error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Poly, Rational};
use crate::error::Error;
use crate::identities::{list_identities, run_suite_filtered, Grid, SuiteReport};
use crate::sequences::{
    s1_triangle, s2_triangle, sequence, Family, S2Recurrence, StirlingTriangle,
};
use crate::series::{dexp, dlog, dpolylog, negate_variable, Series};
use crate::value::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "degen", version, about = "Degenerate Stirling numbers, polynomials and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum TableSelector {
    S1,
    S2,
    Harmonic,
    Hyperharmonic,
    Bernoulli,
    Euler,
    Bell,
    Fubini,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum PolyFamily {
    Bernoulli,
    Euler,
    Bell,
    Fubini,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SeriesSelector {
    Dexp,
    Dlog,
    Dpolylog,
    Hypergf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a Stirling triangle or the members 0..=nmax of a family.
    Table {
        #[arg(value_enum)]
        selector: TableSelector,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        /// Hyperharmonic order (hyperharmonic only, default 1).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Evaluate one polynomial family member at a rational x.
    Eval {
        #[arg(value_enum)]
        family: PolyFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Dump series coefficients c_0..c_N.
    Series {
        #[arg(value_enum)]
        selector: SeriesSelector,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        order: usize,
        /// Exponent base for dexp (default 1).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Polylogarithm index for dpolylog.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// Hyperharmonic order for hypergf.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Run the identity suite. Without --id every identity runs.
    Check {
        #[arg(long)]
        all: bool,
        #[arg(long = "id")]
        ids: Vec<String>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        rmax: Option<usize>,
        #[arg(long)]
        pmax: Option<usize>,
        /// Comma-separated exact rationals.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        #[arg(long)]
        order: Option<usize>,
        /// E67 tolerance, an exact rational or 1e-K.
        #[arg(long)]
        tolerance: Option<String>,
        /// Fill S2 with the sign of the λ term flipped (mutation testing).
        #[arg(long, hide = true)]
        mutate_s2: bool,
    },
    /// List the identity registry.
    List,
}

/// Everything a run produced.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome::error(EXIT_USAGE, message)
    }

    fn domain(message: impl Into<String>) -> Self {
        Outcome::error(EXIT_DOMAIN, message)
    }

    fn error(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Exit code, stdout text, stderr text.
type CmdResult = std::result::Result<(i32, String, String), Outcome>;

fn parse_flag(name: &str, text: &str) -> std::result::Result<Rational, Outcome> {
    parse_rational(text).map_err(|e| Outcome::usage(format!("--{name}: {e}")))
}

fn parse_tolerance(text: &str) -> std::result::Result<Rational, Outcome> {
    if let Some(exp) = text.strip_prefix("1e-") {
        let exp: u32 = exp
            .parse()
            .map_err(|_| Outcome::usage(format!("--tolerance: cannot parse {text:?}")))?;
        return Ok(Rational::new(BigInt::from(1), BigInt::from(10).pow(exp)));
    }
    let value = parse_flag("tolerance", text)?;
    if value <= Rational::from_integer(0.into()) {
        return Err(Outcome::usage("--tolerance must be positive"));
    }
    Ok(value)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Table {
            selector,
            nmax,
            lambda,
            r,
        } => cmd_table(*selector, *nmax, lambda, *r, cli.format),
        Command::Eval {
            family,
            n,
            lambda,
            x,
        } => cmd_eval(*family, *n, lambda, x.as_deref()),
        Command::Series {
            selector,
            lambda,
            order,
            x,
            k,
            r,
        } => cmd_series(*selector, lambda, *order, x.as_deref(), *k, *r, cli.format),
        Command::Check {
            all,
            ids,
            nmax,
            rmax,
            pmax,
            lambdas,
            order,
            tolerance,
            mutate_s2,
        } => build_grid(*nmax, *rmax, *pmax, lambdas.as_deref(), *order, tolerance.as_deref(), *mutate_s2)
            .and_then(|grid| cmd_check(*all, ids, &grid, cli.format)),
        Command::List => cmd_list(cli.format),
    };
    let (code, text, stderr) = match result {
        Ok(pair) => pair,
        Err(outcome) => return outcome,
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr,
        },
    }
}

/// JSON shape of `table` output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableDump {
    pub family: String,
    pub lambda: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub nmax: usize,
    pub values: Vec<Vec<String>>,
}

/// JSON shape of `series` output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeriesDump {
    pub order: usize,
    pub coeffs: Vec<String>,
}

enum TableBody {
    Triangle(StirlingTriangle),
    Scalars(Vec<Rational>),
    Polys(Vec<Poly>),
}

fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn cmd_table(
    selector: TableSelector,
    nmax: usize,
    lambda: &str,
    r: Option<usize>,
    format: Format,
) -> CmdResult {
    let lambda = parse_flag("lambda", lambda)?;
    let family = match selector {
        TableSelector::S1 | TableSelector::S2 => None,
        TableSelector::Harmonic => Some(Family::Harmonic),
        TableSelector::Hyperharmonic => Some(Family::Hyperharmonic),
        TableSelector::Bernoulli => Some(Family::Bernoulli),
        TableSelector::Euler => Some(Family::Euler),
        TableSelector::Bell => Some(Family::Bell),
        TableSelector::Fubini => Some(Family::Fubini),
    };
    let r = match (family, r) {
        (Some(Family::Hyperharmonic), r) => Some(r.unwrap_or(1)),
        (_, Some(_)) => return Err(Outcome::domain("--r is only valid for hyperharmonic")),
        (_, None) => None,
    };
    let name = selector
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let body = match (selector, family) {
        (TableSelector::S1, _) => TableBody::Triangle(s1_triangle(nmax, &lambda)),
        (TableSelector::S2, _) => TableBody::Triangle(s2_triangle(nmax, &lambda)),
        (_, Some(family)) => {
            let items = sequence(family, nmax, r, &lambda).map_err(|e| Outcome::domain(e.to_string()))?;
            if family.is_polynomial() {
                TableBody::Polys(
                    items
                        .into_iter()
                        .map(|item| match item.value {
                            Value::Poly(p) => p,
                            _ => unreachable!("polynomial family"),
                        })
                        .collect(),
                )
            } else {
                TableBody::Scalars(
                    items
                        .into_iter()
                        .map(|item| match item.value {
                            Value::Rational(q) => q,
                            _ => unreachable!("scalar family"),
                        })
                        .collect(),
                )
            }
        }
        _ => unreachable!(),
    };
    let text = match format {
        Format::Plain => {
            let mut out = String::new();
            for n in 0..=nmax {
                let line = match &body {
                    TableBody::Triangle(t) => {
                        t.row(n).iter().map(format_rational).collect::<Vec<_>>().join(" ")
                    }
                    TableBody::Scalars(v) => format_rational(&v[n]),
                    TableBody::Polys(v) => v[n].to_string(),
                };
                out.push_str(&format!("{n}: {line}\n"));
            }
            out
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for n in 0..=nmax {
                match &body {
                    TableBody::Triangle(t) => {
                        for (k, v) in t.row(n).iter().enumerate() {
                            rows.push(vec![n.to_string(), k.to_string(), format_rational(v)]);
                        }
                    }
                    TableBody::Scalars(v) => {
                        rows.push(vec![n.to_string(), String::new(), format_rational(&v[n])])
                    }
                    TableBody::Polys(v) => {
                        for (k, c) in v[n].coeffs().iter().enumerate() {
                            rows.push(vec![n.to_string(), k.to_string(), format_rational(c)]);
                        }
                    }
                }
            }
            csv_text(&["n", "k", "value"], rows)
        }
        Format::Json => {
            let values = (0..=nmax)
                .map(|n| match &body {
                    TableBody::Triangle(t) => t.row(n).iter().map(format_rational).collect(),
                    TableBody::Scalars(v) => vec![format_rational(&v[n])],
                    TableBody::Polys(v) => v[n].coeffs().iter().map(format_rational).collect(),
                })
                .collect();
            to_json(&TableDump {
                family: name,
                lambda: format_rational(&lambda),
                r,
                nmax,
                values,
            })
        }
    };
    Ok((EXIT_OK, text, String::new()))
}

fn cmd_eval(family: PolyFamily, n: usize, lambda: &str, x: Option<&str>) -> CmdResult {
    let lambda = parse_flag("lambda", lambda)?;
    let x = parse_flag("x", x.ok_or_else(|| Outcome::usage("eval needs --x"))?)?;
    let family = match family {
        PolyFamily::Bernoulli => Family::Bernoulli,
        PolyFamily::Euler => Family::Euler,
        PolyFamily::Bell => Family::Bell,
        PolyFamily::Fubini => Family::Fubini,
    };
    let items = sequence(family, n, None, &lambda).map_err(|e| Outcome::domain(e.to_string()))?;
    let value = match &items[n].value {
        Value::Poly(p) => p.eval(&x),
        _ => unreachable!("polynomial family"),
    };
    Ok((EXIT_OK, format!("{}\n", format_rational(&value)), String::new()))
}

fn cmd_series(
    selector: SeriesSelector,
    lambda: &str,
    order: usize,
    x: Option<&str>,
    k: Option<i64>,
    r: Option<usize>,
    format: Format,
) -> CmdResult {
    let lambda = parse_flag("lambda", lambda)?;
    let stray = |flag: &str| Err(Outcome::domain(format!("--{flag} is not used by this series")));
    let series: Series<Rational> = match selector {
        SeriesSelector::Dexp => {
            if k.is_some() {
                return stray("k");
            }
            if r.is_some() {
                return stray("r");
            }
            let x0 = match x {
                Some(text) => parse_flag("x", text)?,
                None => Rational::from_integer(1.into()),
            };
            dexp(&x0, &lambda, order)
        }
        SeriesSelector::Dlog => {
            if x.is_some() || k.is_some() || r.is_some() {
                return stray("x/--k/--r");
            }
            dlog(&lambda, order)
        }
        SeriesSelector::Dpolylog => {
            if x.is_some() || r.is_some() {
                return stray("x/--r");
            }
            let k = k.ok_or_else(|| Outcome::usage("dpolylog needs --k"))?;
            dpolylog(k, &lambda, order)
        }
        SeriesSelector::Hypergf => {
            if x.is_some() || k.is_some() {
                return stray("x/--k");
            }
            let r = r.ok_or_else(|| Outcome::usage("hypergf needs --r"))?;
            if r < 1 {
                return Err(Outcome::domain("--r must be >= 1"));
            }
            hyperharmonic_gf(&lambda, r, order)
        }
    };
    let coeffs: Vec<String> = series.coeffs().iter().map(format_rational).collect();
    let text = match format {
        Format::Plain => format!("[{}]\n", coeffs.join(", ")),
        Format::Csv => csv_text(
            &["k", "value"],
            coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]),
        ),
        Format::Json => to_json(&SeriesDump { order, coeffs }),
    };
    Ok((EXIT_OK, text, String::new()))
}

/// `-log_λ(1-t) / (1-t)^r`.
fn hyperharmonic_gf(lambda: &Rational, r: usize, order: usize) -> Series<Rational> {
    let neg_log = -&negate_variable(&dlog(lambda, order));
    let one_minus_t = Series::new(
        vec![Rational::from_integer(1.into()), Rational::from_integer((-1).into())],
        order,
    );
    let denom = one_minus_t.pow(r).reciprocal().expect("constant term 1");
    &neg_log * &denom
}

fn build_grid(
    nmax: Option<usize>,
    rmax: Option<usize>,
    pmax: Option<usize>,
    lambdas: Option<&str>,
    order: Option<usize>,
    tolerance: Option<&str>,
    mutate: bool,
) -> std::result::Result<Grid, Outcome> {
    let mut grid = Grid::default();
    if let Some(v) = nmax {
        grid.nmax = v;
    }
    if let Some(v) = rmax {
        grid.rmax = v;
    }
    if let Some(v) = pmax {
        grid.pmax = v;
    }
    if let Some(v) = order {
        if v == 0 {
            return Err(Outcome::usage("--order must be >= 1"));
        }
        grid.order = v;
    }
    if let Some(text) = lambdas {
        grid.lambdas = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_flag("lambdas", s))
            .collect::<std::result::Result<_, _>>()?;
        let mut seen = Vec::new();
        grid.lambdas.retain(|l| {
            let fresh = !seen.contains(l);
            seen.push(l.clone());
            fresh
        });
    }
    if let Some(text) = tolerance {
        grid.tolerance = parse_tolerance(text)?;
    }
    if mutate {
        grid.recurrence = S2Recurrence::FlippedLambdaSign;
    }
    Ok(grid)
}

fn cmd_check(all: bool, ids: &[String], grid: &Grid, format: Format) -> CmdResult {
    let selected: Vec<String> = if all || ids.is_empty() {
        list_identities().iter().map(|s| s.id.to_string()).collect()
    } else {
        ids.to_vec()
    };
    let report = run_suite_filtered(grid, &selected).map_err(|e| match e {
        Error::UnknownIdentity(_) => Outcome::usage(e.to_string()),
        other => Outcome::domain(other.to_string()),
    })?;
    let code = if report.all_pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    let timing = format!("elapsed: {:.3}s\n", report.elapsed.as_secs_f64());
    Ok((code, render_report(&report, format), timing))
}

fn render_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => csv_text(
            &["id", "pass_count", "fail_count"],
            report.results.iter().map(|r| {
                vec![r.id.clone(), r.pass_count.to_string(), r.fail_count.to_string()]
            }),
        ),
        Format::Plain => {
            let mut out = String::new();
            for r in &report.results {
                let verdict = if r.fail_count == 0 { "ok" } else { "FAILED" };
                out.push_str(&format!(
                    "{:<5} {:>5} passed {:>5} failed  {verdict}\n",
                    r.id, r.pass_count, r.fail_count
                ));
            }
            for failure in report.failures() {
                out.push_str(&format!("{failure}\n"));
            }
            out.push_str(&format!(
                "checks: {}  all_pass: {}\n",
                report.executed(),
                report.all_pass
            ));
            out
        }
    }
}

fn cmd_list(format: Format) -> CmdResult {
    let items = list_identities();
    let text = match format {
        Format::Json => to_json(&items),
        Format::Csv => csv_text(
            &["id", "schema", "numeric", "description"],
            items.iter().map(|s| {
                vec![
                    s.id.to_string(),
                    s.schema.to_string(),
                    s.numeric.to_string(),
                    s.description.to_string(),
                ]
            }),
        ),
        Format::Plain => items
            .iter()
            .map(|s| format!("{:<5} [{}] {}\n", s.id, s.schema, s.description))
            .collect(),
    };
    Ok((EXIT_OK, text, String::new()))
}
