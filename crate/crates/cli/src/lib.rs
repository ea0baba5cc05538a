//! Command line front end: argument parsing, dispatch and output formatting.
//!
//! [`run`] is the whole program minus the process boundary, so tests can call
//! it directly.

use std::io::BufRead;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lctkit::engine::{self, LctOptions, LctResult};
use lctkit::error::ErrorKind;
use lctkit::newton::{newton_polygon, Facet};
use lctkit::parse::{parse_with, ParseLimits};
use lctkit::{milnor, whfactor, Error, Rational, WeightVector};
use rayon::prelude::*;
use serde_json::{json, Value};

pub mod json;
pub mod svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "lctkit",
    version,
    about = "Exact log canonical thresholds of plane curve germs"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest coefficient size, in bits, allowed while expanding an expression.
    #[arg(
        long,
        global = true,
        env = "LCTKIT_MAX_BITS",
        default_value_t = 1_000_000
    )]
    max_bits: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Log canonical threshold at the origin.
    Lct {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 64)]
        max_iter: usize,
        /// Also report the Milnor number.
        #[arg(long)]
        milnor: bool,
    },
    /// Vertices, facets and diagonal distance of the Newton polygon.
    Newton {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Write an SVG plot to this file.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Change coordinates until every compact facet is normalised.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 64)]
        max_iter: usize,
        /// Truncate to this total degree after every substitution.
        #[arg(long)]
        trunc: Option<u64>,
    },
    /// Upper bound sum(w) / wt_w(f) from a weight vector.
    Bound {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
    },
    /// Interval around the threshold from a degree-D truncation.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        degree: u64,
    },
    /// Closed-form threshold of (prod x_i^a_i)(sum x_i^b_i).
    Family {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
    },
    /// Milnor number at the origin.
    Milnor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Whether every compact facet has a reduced saturated leading form.
    CheckNnd {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Threshold of every line of standard input, one JSON object per line.
    Batch,
}

/// What the process should print and return.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Parse => 2,
        ErrorKind::Domain => 3,
        ErrorKind::Engine => 4,
    }
}

/// Failures that are not engine errors.
const IO_FAILURE: i32 = 1;

pub fn run<I, T>(args: I, stdin: &mut dyn BufRead) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    ..Output::default()
                }
            } else {
                Output {
                    code: 2,
                    stderr: text,
                    ..Output::default()
                }
            };
        }
    };
    let limits = ParseLimits {
        max_bits: cli.max_bits,
        ..ParseLimits::default()
    };
    let format = cli.format;

    if let Command::Batch = cli.command {
        return batch(stdin, limits);
    }

    match dispatch(cli.command, limits, format) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            ..Output::default()
        },
        Err(Failure::Engine(e)) => Output {
            code: exit_code(&e),
            stdout: match format {
                Format::Json => format!("{}\n", json::error(&e)),
                Format::Text => String::new(),
            },
            stderr: format!("error: {e}\n"),
        },
        Err(Failure::Io(msg)) => Output {
            code: IO_FAILURE,
            stderr: format!("error: {msg}\n"),
            ..Output::default()
        },
    }
}

enum Failure {
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn render(format: Format, value: Value, text: String) -> String {
    match format {
        Format::Json => format!("{value}\n"),
        Format::Text => text,
    }
}

fn dispatch(command: Command, limits: ParseLimits, format: Format) -> Result<String, Failure> {
    let parse = |s: &str| parse_with(s, limits);
    Ok(match command {
        Command::Lct {
            expr,
            max_iter,
            milnor,
        } => {
            let f = parse(&expr)?;
            let opts = LctOptions {
                max_iter,
                with_milnor: milnor,
                ..LctOptions::default()
            };
            let r = engine::lct(&f, &opts)?;
            render(format, json::lct(f.nvars(), &r), lct_text(&r))
        }
        Command::Newton { expr, plot } => {
            let f = parse(&expr)?;
            let polygon = newton_polygon(&f)?;
            if let Some(path) = plot {
                std::fs::write(&path, svg::render(&polygon))
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            let diag = polygon.diagonal();
            let mut text = format!("vertices: {}\n", points_text(polygon.vertices()));
            for facet in polygon.facets() {
                text.push_str(&format!("facet: {}\n", facet_text(facet)));
            }
            text.push_str(&format!(
                "c = {}{}\n",
                diag.c,
                if diag.is_corner { " (corner)" } else { "" }
            ));
            render(format, json::newton(&polygon), text)
        }
        Command::Normalize {
            expr,
            max_iter,
            trunc,
        } => {
            let f = parse(&expr)?;
            let (g, trail) = engine::normalize(&f, max_iter, trunc)?;
            let c = newton_polygon(&g)?.diagonal().c;
            let mut text = format!("{g}\n");
            for s in &trail.steps {
                text.push_str(&format!("step: {s}\n"));
            }
            text.push_str(&format!("c = {c}\n"));
            render(format, json::normalize(f.nvars(), &g, &trail, &c), text)
        }
        Command::Bound { expr, weights } => {
            let f = parse(&expr)?;
            let w = WeightVector::new(&weights)?;
            let v = engine::weight_bound(&f, &w)?;
            value_output(format, "upper-bound-only", &v)
        }
        Command::Bracket { expr, degree } => {
            let f = parse(&expr)?;
            let (lo, hi) = engine::lct_bracket(&f, degree)?;
            render(
                format,
                json!({
                    "status": "bracket",
                    "bracket": [json::rational(&lo), json::rational(&hi)],
                    "degree": degree,
                }),
                format!("[{lo}, {hi}]\n"),
            )
        }
        Command::Family { a, b } => {
            let v = engine::lct_product_sum(&a, &b)?;
            value_output(format, "exact", &v)
        }
        Command::Milnor { expr } => {
            let f = parse(&expr)?;
            let mu = milnor::milnor_number(&f)?;
            render(format, json!({ "milnor": mu }), format!("{mu}\n"))
        }
        Command::CheckNnd { expr } => {
            let f = parse(&expr)?;
            let nnd = whfactor::is_newton_nondegenerate(&f)?;
            render(
                format,
                json!({ "nondegenerate": nnd }),
                format!("{}\n", if nnd { "nondegenerate" } else { "degenerate" }),
            )
        }
        Command::Batch => unreachable!("handled by run"),
    })
}

fn value_output(format: Format, status: &str, v: &Rational) -> String {
    render(
        format,
        json!({ "status": status, "value": json::rational(v) }),
        format!("{v}\n"),
    )
}

fn points_text(ps: &[lctkit::newton::Point]) -> String {
    ps.iter()
        .map(|p| format!("({}, {})", p.x, p.y))
        .collect::<Vec<_>>()
        .join(" ")
}

fn facet_text(f: &Facet) -> String {
    let s = f.start();
    match f.end() {
        Some(e) => format!(
            "normal {} from ({}, {}) to ({}, {})",
            f.normal(),
            s.x,
            s.y,
            e.x,
            e.y
        ),
        None => format!("normal {} from ({}, {}), unbounded", f.normal(), s.x, s.y),
    }
}

fn lct_text(r: &LctResult) -> String {
    let mut t = format!("{} {}\n", r.status, r.value);
    if let Some((lo, hi)) = &r.bracket {
        t.push_str(&format!("bracket: [{lo}, {hi}]\n"));
    }
    t.push_str(&format!("c = {}\n", r.c));
    t.push_str(&format!("clause: {}\n", r.certificate.clause));
    if let Some(f) = &r.certificate.facet {
        t.push_str(&format!("facet: {}\n", facet_text(f)));
    }
    for s in &r.certificate.steps {
        t.push_str(&format!("step: {s}\n"));
    }
    if let Some(mu) = r.milnor {
        t.push_str(&format!("milnor: {mu}\n"));
    }
    t
}

fn batch_line(line: &str, limits: ParseLimits) -> (i32, Value) {
    let result = parse_with(line, limits)
        .and_then(|f| engine::lct(&f, &LctOptions::default()).map(|r| (f, r)));
    match result {
        Ok((f, r)) => (0, json::lct(f.nvars(), &r)),
        Err(e) => (exit_code(&e), json::error(&e)),
    }
}

/// Blank lines are skipped. The exit code is the largest over all lines.
fn batch(stdin: &mut dyn BufRead, limits: ParseLimits) -> Output {
    let mut lines = Vec::new();
    for line in stdin.lines() {
        match line {
            Ok(l) if l.trim().is_empty() => {}
            Ok(l) => lines.push(l),
            Err(e) => {
                return Output {
                    code: IO_FAILURE,
                    stderr: format!("error: reading standard input: {e}\n"),
                    ..Output::default()
                }
            }
        }
    }
    let results: Vec<(i32, Value)> = lines.par_iter().map(|l| batch_line(l, limits)).collect();
    let mut out = Output::default();
    for (code, v) in results {
        out.code = out.code.max(code);
        out.stdout.push_str(&v.to_string());
        out.stdout.push('\n');
    }
    out
}
