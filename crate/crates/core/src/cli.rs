// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! The `cheeger` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 bad arguments (including an
//! invalid `q`), 3 unreadable or invalid shape file, 4 solver did not
//! converge (the result is still written, with `converged: false`).

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closed_forms::{lambda_upper_proxy_two_balls, two_ball_h, Exponent};
use crate::constants::constant_bundle;
use crate::error::Error;
use crate::geometry::smooth;
use crate::numerics::loglog_slope;
use crate::solver::{
    elongation_demo, estimate, existence_report, nonexistence_demo, CheegerEstimate, ElongationFamily,
    ExistenceReport, Profile, ShapeSpec, SolverOptions,
};
use crate::verify::{default_corpus, elongation_svg, run_suite_with, sandwich_svg};

#[derive(Parser, Debug)]
#[command(name = "cheeger", version, about = "Generalized Cheeger constants of planar sets")]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, env = "CHEEGER_OUT_DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct SolverArgs {
    #[arg(long, global = true)]
    vertex_count: Option<usize>,
    #[arg(long, global = true)]
    multistarts: Option<usize>,
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate h_q of the domain in a shape file.
    Compute {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        q: f64,
    },
    /// Estimate h_q of a disjoint union.
    Union {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        q: f64,
    },
    /// Print the comparison and Moser-type constants for (N, q).
    Constants {
        #[arg(long = "N", short = 'N')]
        dim: u32,
        #[arg(long)]
        q: f64,
    },
    /// Smooth a convex polygon by mollifying its gauge, about its centroid.
    Smooth {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 720)]
        directions: usize,
    },
    /// Demonstrations.
    #[command(subcommand)]
    Demo(Demo),
    /// Run the inequality suite and write JSON, Markdown and SVG reports.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.2,1.5,1.8")]
        qs: Vec<f64>,
        /// Shape files replacing the default corpus.
        #[arg(long)]
        corpus: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Ratios of elongating stadiums, ellipses or rectangles.
    Elongation {
        #[arg(long)]
        family: ElongationFamily,
        #[arg(long)]
        q: f64,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        sizes: Vec<f64>,
    },
    /// Strictly decreasing ratios on an epigraph where h_q is not attained.
    Nonexistence {
        /// Epigraph shape file; defaults to the log profile of half-width 1.
        #[arg(long)]
        shape: Option<PathBuf>,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Two disjoint disks of radii r <= R.
    TwoBall {
        #[arg(long)]
        r: f64,
        #[arg(long = "R")]
        big_r: f64,
        #[arg(long)]
        q: f64,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn args(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn shape(path: &Path, message: impl std::fmt::Display) -> Self {
        Failure { code: 3, message: format!("{}: {message}", path.display()) }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidExponent { .. } | Error::Precondition(_) | Error::RefineN { .. } => 2,
            Error::InvalidShape(_) | Error::NotConvex(_) | Error::Degenerate(_) | Error::OriginNotInterior { .. } => 3,
            Error::Containment(_) | Error::Lp(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first), runs the command and returns the exit
/// code. The one-line summary goes to standard output, errors to standard
/// error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(Outcome { summary, converged }) => {
            println!("{summary}");
            if converged {
                0
            } else {
                eprintln!("warning: the solver did not converge; the result was written with converged=false");
                4
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

struct Outcome {
    summary: String,
    converged: bool,
}

impl Outcome {
    fn done(summary: String) -> Self {
        Outcome { summary, converged: true }
    }
}

fn solver_options(cli: &Cli) -> CliResult<SolverOptions> {
    let d = SolverOptions::default();
    let s = &cli.solver;
    let opts = SolverOptions {
        vertex_count: s.vertex_count.unwrap_or(d.vertex_count),
        multistarts: s.multistarts.unwrap_or(d.multistarts),
        max_iters: s.max_iters.unwrap_or(d.max_iters),
        tol_rel: s.tol_rel.unwrap_or(d.tol_rel),
        rng_seed: cli.seed,
    };
    opts.validate().map_err(|e| Failure::args(e.to_string()))?;
    Ok(opts)
}

fn exponent(q: f64) -> CliResult<Exponent> {
    Exponent::planar(q).map_err(|e| Failure::args(e.to_string()))
}

fn load_shape(path: &Path) -> CliResult<ShapeSpec> {
    let text = fs::read_to_string(path).map_err(|e| Failure::shape(path, e))?;
    let shape: ShapeSpec = serde_json::from_str(&text).map_err(|e| Failure::shape(path, e))?;
    shape.validate().map_err(|e| Failure::shape(path, e))?;
    Ok(shape)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "shape".into())
}

/// Writes `contents` to `dir/name` through a temporary file and a rename.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Failure::internal(format!("{}: {e}", dir.display())))?;
    let target = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Failure::internal(e.to_string()))?;
    tmp.write_all(contents).map_err(|e| Failure::internal(e.to_string()))?;
    tmp.as_file().sync_all().map_err(|e| Failure::internal(e.to_string()))?;
    tmp.persist(&target).map_err(|e| Failure::internal(format!("{}: {e}", target.display())))?;
    Ok(target)
}

fn to_json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::internal(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn to_csv<R: Serialize>(rows: &[R]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::internal(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Failure::internal(e.to_string()))
}

/// Writes either the JSON document or the CSV rows, by `--format`.
fn emit<J: Serialize, R: Serialize>(cli: &Cli, base: &str, json: &J, rows: &[R]) -> CliResult<PathBuf> {
    match cli.format {
        Format::Json => write_atomic(&cli.out, &format!("{base}.json"), &to_json(json)?),
        Format::Csv => write_atomic(&cli.out, &format!("{base}.csv"), &to_csv(rows)?),
    }
}

#[derive(Serialize)]
struct ComputeOutput<'a> {
    shape: &'a ShapeSpec,
    q: f64,
    estimate: &'a CheegerEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    existence: Option<ExistenceReport>,
}

#[derive(Serialize)]
struct EstimateRow<'a> {
    q: f64,
    value: f64,
    perimeter: f64,
    area: f64,
    lower_bound: f64,
    method: &'a str,
    converged: bool,
}

fn compute(cli: &Cli, path: &Path, q: f64, union_only: bool) -> CliResult<Outcome> {
    let e = exponent(q)?;
    let opts = solver_options(cli)?;
    let shape = load_shape(path)?;
    if union_only && !matches!(shape, ShapeSpec::Union { .. }) {
        return Err(Failure::shape(path, format!("expected a union, got {}", shape.kind())));
    }
    let est = estimate(&shape, e, &opts)?;
    let existence = existence_report(&shape, e).ok();
    let method = serde_json::to_value(est.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let row = EstimateRow {
        q,
        value: est.value,
        perimeter: est.perimeter,
        area: est.area,
        lower_bound: est.lower_bound,
        method: &method,
        converged: est.converged,
    };
    let base = format!("{}-{}-q{q}", if union_only { "union" } else { "compute" }, stem(path));
    let out = ComputeOutput { shape: &shape, q, estimate: &est, existence };
    let written = emit(cli, &base, &out, &[row])?;
    Ok(Outcome {
        summary: format!(
            "h_q({}) <= {:.6} at q = {q} [{method}], lower bound {:.6}; wrote {}",
            shape.summary(),
            est.value,
            est.lower_bound,
            written.display()
        ),
        converged: est.converged,
    })
}

#[derive(Serialize)]
struct ConstantRow {
    name: &'static str,
    value: Option<f64>,
}

fn constants(cli: &Cli, dim: u32, q: f64) -> CliResult<Outcome> {
    Exponent::new(dim, q).map_err(|e| Failure::args(e.to_string()))?;
    let b = constant_bundle(dim, q)?;
    let rows = [
        ConstantRow { name: "talenti_limit", value: Some(b.talenti_limit) },
        ConstantRow { name: "A", value: b.a },
        ConstantRow { name: "B", value: b.b },
        ConstantRow { name: "C_moser", value: b.c_moser },
        ConstantRow { name: "C_upper", value: Some(b.c_upper) },
        ConstantRow { name: "C_lower", value: b.c_lower },
    ];
    let written = emit(cli, &format!("constants-N{dim}-q{q}"), &b, &rows)?;
    let lower = b.c_lower.map_or_else(|| "n/a".to_string(), |c| format!("{c:.6}"));
    Ok(Outcome::done(format!(
        "N = {dim}, q = {q}: C_lower = {lower}, C_upper = {:.6}; wrote {}",
        b.c_upper,
        written.display()
    )))
}

#[derive(Serialize)]
struct SmoothRow {
    n: u32,
    sandwich_factor: f64,
    violations: usize,
    perimeter: f64,
    area: f64,
    perimeter_error: f64,
}

#[derive(Serialize)]
struct SmoothOutput<'a> {
    shape: &'a ShapeSpec,
    directions: usize,
    lipschitz: f64,
    perimeter: f64,
    rows: &'a [SmoothRow],
    /// `-slope` of `ln |P(E_n) - P(E)|` against `ln n`.
    perimeter_order: Option<f64>,
}

fn smooth_cmd(cli: &Cli, path: &Path, ns: &[u32], directions: usize) -> CliResult<Outcome> {
    let shape = load_shape(path)?;
    if ns.is_empty() {
        return Err(Failure::args("need at least one n"));
    }
    let poly = shape.polygonize(crate::solver::CURVED_RESOLUTION).map_err(|e| Failure::shape(path, e))?;
    let poly = poly.translate(-poly.centroid());
    let p0 = poly.perimeter();
    let mut rows = Vec::with_capacity(ns.len());
    let mut lipschitz = 0.0;
    for &n in ns {
        let body = smooth(&poly, n, directions)?;
        lipschitz = body.gauge.lipschitz;
        let p = body.perimeter();
        rows.push(SmoothRow {
            n,
            sandwich_factor: body.sandwich_factor(),
            violations: body.sandwich_violations(0.0),
            perimeter: p,
            area: body.area(),
            perimeter_error: (p - p0).abs(),
        });
    }
    let perimeter_order = (rows.len() >= 2).then(|| {
        let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.perimeter_error).collect();
        -loglog_slope(&xs, &ys)
    });
    let out = SmoothOutput { shape: &shape, directions, lipschitz, perimeter: p0, rows: &rows, perimeter_order };
    let written = emit(cli, &format!("smooth-{}", stem(path)), &out, &rows)?;
    let violations: usize = rows.iter().map(|r| r.violations).sum();
    let order = perimeter_order.map_or_else(|| "n/a".to_string(), |o| format!("{o:.3}"));
    Ok(Outcome::done(format!(
        "smoothed {} for n = {ns:?}: {violations} sandwich violations, perimeter order {order}; wrote {}",
        shape.summary(),
        written.display()
    )))
}

#[derive(Serialize)]
struct TwoBallOutput {
    r: f64,
    big_r: f64,
    q: f64,
    value: f64,
    /// Radii of the disks kept in the small and the big member.
    kept_small: f64,
    kept_big: f64,
    method: crate::closed_forms::TwoBallMethod,
    /// Power-mean combination of the two ball values, for `q < 1`.
    lambda_proxy: Option<f64>,
}

fn demo(cli: &Cli, d: &Demo) -> CliResult<Outcome> {
    match d {
        Demo::Elongation { family, q, sizes } => {
            let e = exponent(*q)?;
            let res = elongation_demo(*family, e, sizes)?;
            let name = format!("{family:?}").to_lowercase();
            let written = emit(cli, &format!("elongation-{name}-q{q}"), &res, &res.rows)?;
            Ok(Outcome::done(format!(
                "{name} sweep at q = {q}: log-log slope {:.4} (1 - 1/q = {:.4}); wrote {}",
                res.slope,
                1.0 - 1.0 / q,
                written.display()
            )))
        }
        Demo::Nonexistence { shape, q, steps } => {
            let e = exponent(*q)?;
            let spec = match shape {
                Some(p) => load_shape(p)?,
                None => ShapeSpec::Epigraph { halfwidth: 1.0, profile: Profile::Log },
            };
            let rows = nonexistence_demo(&spec, e, *steps)?;
            let written = emit(cli, &format!("nonexistence-q{q}"), &rows, &rows)?;
            let first = rows.first().map_or(f64::NAN, |r| r.ratio);
            let last = rows.last().map_or(f64::NAN, |r| r.ratio);
            Ok(Outcome::done(format!(
                "{} steps on {}: ratio {first:.6} -> {last:.6}; wrote {}",
                rows.len(),
                spec.summary(),
                written.display()
            )))
        }
        Demo::TwoBall { r, big_r, q } => {
            exponent(*q)?;
            let res = two_ball_h(*r, *big_r, *q)?;
            let lambda_proxy = if *q < 1.0 { Some(lambda_upper_proxy_two_balls(*r, *big_r, *q)?) } else { None };
            let out = TwoBallOutput {
                r: *r,
                big_r: *big_r,
                q: *q,
                value: res.value,
                kept_small: res.radii.0,
                kept_big: res.radii.1,
                method: res.method,
                lambda_proxy,
            };
            let written = emit(cli, &format!("two-ball-r{r}-R{big_r}-q{q}"), &out, &[&out])?;
            Ok(Outcome::done(format!(
                "two disks r = {r}, R = {big_r}, q = {q}: h_q = {:.8} with radii ({:.6}, {:.6}); wrote {}",
                res.value,
                res.radii.0,
                res.radii.1,
                written.display()
            )))
        }
    }
}

fn verify_cmd(cli: &Cli, qs: &[f64], corpus: &[PathBuf]) -> CliResult<Outcome> {
    for &q in qs {
        exponent(q)?;
    }
    let opts = solver_options(cli)?;
    let shapes = if corpus.is_empty() {
        default_corpus(cli.seed)?
    } else {
        corpus.iter().map(|p| load_shape(p)).collect::<CliResult<_>>()?
    };
    let report = run_suite_with(&shapes, qs, &opts)?;
    let json = report.to_json()?;
    let written = write_atomic(&cli.out, "report.json", format!("{json}\n").as_bytes())?;
    write_atomic(&cli.out, "report.md", report.to_markdown().as_bytes())?;
    write_atomic(&cli.out, "sandwich.svg", sandwich_svg(&report).as_bytes())?;
    write_atomic(&cli.out, "elongation.svg", elongation_svg(&report).as_bytes())?;
    Ok(Outcome::done(format!(
        "{} checks, {} passed, {} failed; wrote {} and report.md, sandwich.svg, elongation.svg",
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        written.display()
    )))
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Compute { shape, q } => compute(cli, shape, *q, false),
        Command::Union { shape, q } => compute(cli, shape, *q, true),
        Command::Constants { dim, q } => constants(cli, *dim, *q),
        Command::Smooth { shape, n, directions } => smooth_cmd(cli, shape, n, *directions),
        Command::Demo(d) => demo(cli, d),
        Command::Verify { qs, corpus } => verify_cmd(cli, qs, corpus),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_command() {
        for args in [
            &["cheeger", "compute", "--shape", "a.json", "--q", "1.5"][..],
            &["cheeger", "constants", "--N", "2", "--q", "1.5"],
            &["cheeger", "demo", "elongation", "--family", "stadium", "--q", "0.5", "--sizes", "100,1000"],
            &["cheeger", "demo", "two-ball", "--r", "0.1", "--R", "1", "--q", "0.5"],
            &["cheeger", "--format", "csv", "verify", "--qs", "1.5"],
            &["cheeger", "smooth", "--shape", "s.json", "--n", "10,20"],
        ] {
            Cli::try_parse_from(args).unwrap();
        }
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::Precondition("x".into())).code, 2);
        assert_eq!(Failure::from(Error::InvalidShape("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Lp("x".into())).code, 1);
        assert_eq!(run(["cheeger", "frobnicate"]), 2);
        assert_eq!(run(["cheeger", "constants", "--N", "2", "--q", "2"]), 2);
    }
}
