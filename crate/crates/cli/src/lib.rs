//! The `facthom` command line: argument parsing, job construction from
//! flags or DSL programs, ordered execution and rendering.

mod args;
mod jobs;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::Parser;
use facthom_core::algebras::{module_from, preset, random_algebra, GradedAlgebra, ModuleKind, PresetKind, RandomAlgebraSpec, Side};
use facthom_core::manifolds::dsl::{parse_program, Job as DslJob};
use facthom_core::manifolds::{ManifoldExpr, OutputFormat};
use facthom_core::Error;
use serde_json::json;

pub use args::Cli;
use args::{AlgebraArgs, Boundary, CheckCommand, Command, FacthomArgs, ManifoldShape, PresetName, SpaceArgs};
pub use jobs::{execute_ordered, Job, JobResult, Metadata, Payload, Status, Task};
use output::Style;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DSL: u8 = 3;

/// Weight bound used by commands that need one when --maxweight is absent.
const DEFAULT_MAX_WEIGHT: u32 = 4;

fn preset_kind(a: &AlgebraArgs) -> PresetKind {
    let (dim, deg) = (a.dim, a.deg);
    match a.preset {
        PresetName::Tensor => PresetKind::Tensor { dim, deg },
        PresetName::Sym => PresetKind::Sym { dim, deg },
        PresetName::Exterior => PresetKind::Exterior { dim, deg },
        PresetName::Truncpoly => PresetKind::TruncPoly { order: a.order },
        PresetName::Squarezero => PresetKind::SquareZero { dim, deg },
    }
}

fn describe_algebra(a: &AlgebraArgs) -> String {
    match a.random {
        Some(seed) => format!("random(dim={},seed={seed}{})", a.dim, if a.weighted { ",weighted" } else { "" }),
        None => preset_kind(a).to_string(),
    }
}

fn build_algebra(cli: &Cli, a: &AlgebraArgs, max_weight: Option<u32>) -> Result<Arc<GradedAlgebra>, Error> {
    let alg = match a.random {
        Some(seed) => {
            let spec = RandomAlgebraSpec { field: cli.field, dim: a.dim, weighted: a.weighted, max_degree: 1 };
            random_algebra(spec, seed)?
        }
        None => preset(cli.field, preset_kind(a), max_weight)?,
    };
    Ok(Arc::new(alg))
}

fn flag_job(cli: &Cli) -> Result<Job, Error> {
    let w = cli.maxweight.unwrap_or(DEFAULT_MAX_WEIGHT);
    let request = |command: &str, extra: serde_json::Value| {
        let mut v = json!({
            "command": command,
            "field": cli.field.to_string(),
            "maxdeg": cli.maxdeg,
            "maxweight": cli.maxweight,
        });
        if let (Some(obj), Some(more)) = (v.as_object_mut(), extra.as_object()) {
            obj.extend(more.clone());
        }
        v
    };
    let job = |request, title: String, task| Job { request, title, task, json: cli.json, span: None };
    let space_job = |name: &str, s: &SpaceArgs, sym: bool| {
        let (field, dim, deg, max_deg) = (cli.field, s.dim, s.deg, cli.maxdeg);
        let task = if sym {
            Task::Sym { field, dim, deg, max_weight: w, max_deg }
        } else {
            Task::Free { field, dim, deg, max_weight: w, max_deg }
        };
        job(
            request(&format!("check {name}"), json!({ "dim": dim, "deg": deg, "maxweight": w })),
            format!("check {name}: V = k^{dim} in degree {deg}, maxweight {w}"),
            task,
        )
    };
    Ok(match &cli.command {
        Command::Run { .. } => unreachable!("handled by run_program"),
        Command::Hochschild(a) => {
            let algebra = build_algebra(cli, a, cli.maxweight)?;
            job(
                request("hochschild", json!({ "algebra": describe_algebra(a) })),
                format!("hochschild {}", describe_algebra(a)),
                Task::Facthom { expr: ManifoldExpr::Circle(algebra), max_deg: cli.maxdeg },
            )
        }
        Command::Facthom(FacthomArgs { algebra: a, manifold, boundary }) => {
            let algebra = build_algebra(cli, a, cli.maxweight)?;
            let expr = match manifold {
                ManifoldShape::Circle => ManifoldExpr::Circle(algebra),
                ManifoldShape::TwoCircles => {
                    ManifoldExpr::disjoint(vec![ManifoldExpr::Circle(algebra.clone()), ManifoldExpr::Circle(algebra)])?
                }
                ManifoldShape::Interval => {
                    let kind = |side| match boundary {
                        Boundary::Regular => ModuleKind::Regular(side),
                        Boundary::Aug => ModuleKind::Augmentation(side),
                    };
                    let left = Arc::new(module_from(kind(Side::Right), &algebra)?);
                    let right = Arc::new(module_from(kind(Side::Left), &algebra)?);
                    ManifoldExpr::interval(algebra, left, right)?
                }
            };
            let shape = expr.shape();
            job(
                request(
                    "facthom",
                    json!({ "algebra": describe_algebra(a), "manifold": shape.to_string(), "boundary": format!("{boundary:?}").to_lowercase() }),
                ),
                format!("facthom {shape} with {}", describe_algebra(a)),
                Task::Facthom { expr, max_deg: cli.maxdeg },
            )
        }
        Command::Layers(a) => {
            let algebra = build_algebra(cli, a, Some(w))?;
            job(
                request("layers", json!({ "algebra": describe_algebra(a), "maxweight": w })),
                format!("layers {} up to weight {w}", describe_algebra(a)),
                Task::Layers { algebra, top: w },
            )
        }
        Command::Koszul(a) => {
            let algebra = build_algebra(cli, a, Some(w))?;
            job(
                request("koszul", json!({ "algebra": describe_algebra(a), "maxweight": w })),
                format!("koszul {} up to weight {w}", describe_algebra(a)),
                Task::Koszul { algebra, max_weight: w },
            )
        }
        Command::Check(CheckCommand::Excision(a)) => {
            let algebra = build_algebra(cli, a, cli.maxweight)?;
            job(
                request("check excision", json!({ "algebra": describe_algebra(a) })),
                format!("check excision {} maxdeg {}", describe_algebra(a), cli.maxdeg),
                Task::Excision { algebra, max_deg: cli.maxdeg },
            )
        }
        Command::Check(CheckCommand::Free(s)) => space_job("free", s, false),
        Command::Check(CheckCommand::Sym(s)) => space_job("sym", s, true),
        Command::Check(CheckCommand::Pkd(a)) => {
            let algebra = build_algebra(cli, a, Some(w))?;
            job(
                request("check pkd", json!({ "algebra": describe_algebra(a), "maxweight": w })),
                format!("check pkd {} up to weight {w}", describe_algebra(a)),
                Task::Pkd { algebra, max_weight: w },
            )
        }
    })
}

fn program_jobs(cli: &Cli, file: &str, jobs: Vec<DslJob>) -> Vec<Job> {
    jobs.into_iter()
        .map(|j| match j {
            DslJob::Compute { manifold, request, span } => Job {
                request: json!({
                    "command": "compute",
                    "file": file,
                    "line": span.line,
                    "manifold": manifold,
                    "shape": request.expr.shape().to_string(),
                    "maxdeg": request.max_deg,
                }),
                title: format!("{file}:{}: facthom {manifold} = {} maxdeg {}", span.line, request.expr.shape(), request.max_deg),
                json: cli.json || request.format == OutputFormat::Json,
                span: Some(span),
                task: Task::Facthom { expr: request.expr, max_deg: request.max_deg },
            },
            DslJob::CheckExcision { algebra_name, algebra, max_deg, span } => Job {
                request: json!({
                    "command": "check excision",
                    "file": file,
                    "line": span.line,
                    "algebra": algebra_name,
                    "maxdeg": max_deg,
                }),
                title: format!("{file}:{}: check excision {algebra_name} maxdeg {max_deg}", span.line),
                json: cli.json,
                span: Some(span),
                task: Task::Excision { algebra, max_deg },
            },
        })
        .collect()
}

/// A DSL error with the offending source line and a caret.
fn render_dsl_error(file: &str, source: &str, e: &Error) -> String {
    let Some(span) = e.span() else {
        return format!("error: {file}: {e}\n");
    };
    let mut out = format!("error: {}\n --> {file}:{}:{}\n", e.message(), span.line, span.column);
    if let Some(line) = source.lines().nth(span.line.saturating_sub(1)) {
        let gutter = span.line.to_string();
        let pad = " ".repeat(gutter.len());
        let caret = format!("{}{}", " ".repeat(span.column.saturating_sub(1)), "^".repeat(span.len.max(1)));
        out.push_str(&format!("{pad} |\n{gutter} | {line}\n{pad} | {caret}\n"));
    }
    out
}

fn emit(out: &mut dyn Write, r: &JobResult, style: Style) {
    let text = if r.json {
        format!("{}\n", r.to_json())
    } else {
        output::human(r, style)
    };
    // A closed pipe is not an error worth reporting.
    let _ = out.write_all(text.as_bytes());
}

/// Runs the CLI on `argv` and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let style = Style { color: !cli.json && Style::from_env().color };
    let (jobs, error_code) = match &cli.command {
        Command::Run { file } => {
            let name = file.display().to_string();
            let source = match std::fs::read_to_string(file) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot read {name}: {e}");
                    return EXIT_USAGE;
                }
            };
            match parse_program(&source) {
                Ok((_, jobs)) => (program_jobs(&cli, &name, jobs), EXIT_DSL),
                Err(e) => {
                    let _ = write!(err, "{}", render_dsl_error(&name, &source, &e));
                    return EXIT_DSL;
                }
            }
        }
        _ => match flag_job(&cli) {
            Ok(job) => (vec![job], EXIT_USAGE),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
    };
    let mut worst = Status::Ok;
    execute_ordered(jobs, cli.jobs as usize, |r| {
        worst = worst.max(r.status);
        emit(out, &r, style);
    });
    match worst {
        Status::Ok => EXIT_OK,
        Status::CheckFailed => EXIT_CHECK_FAILED,
        Status::Error => error_code,
    }
}
