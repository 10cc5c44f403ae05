//! Command-line front end. `main` parses [`Cli`] and hands it to [`run`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::appendix::{appendix_experiment, AppendixOptions};
use super::cusp::{cusp_patch_experiment, CuspOptions};
use super::geometry::{geometry_sweep, write_reproducers};
use super::report::render;
use super::topology::check_level_topology;
use super::witness::{nonexistence_witness, WitnessOptions};
use crate::convexgeo::write_jsonl;
use crate::error::{Error, Result};
use crate::fieldcore::io::{read_json, save_field, write_json, FieldMeta};
use crate::fieldcore::{build_grid, ConvexDomain, Grid, Preset, PresetParams, ScalarField};
use crate::poisson::first_eigenvalue;
use crate::steady::{write_run_dir, Extremum, SteadyOptions, SteadyState};

#[derive(Debug, Parser)]
#[command(name = "steady-euler", version, about = "Energy extremizers on rearrangement classes of planar vorticity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy minimizer or maximizer of a preset.
    Solve(SolveArgs),
    /// Boundary constancy and sublevel topology of a preset.
    Topology(TopologyArgs),
    /// Lower bound certifying that no minimizer exists in the strong closure.
    Witness(TopologyArgs),
    /// Inscribed-ball bound on random convex rings.
    GeometrySweep(SweepArgs),
    /// Rearrangement of the appendix preset on the unit disk.
    Appendix(AppendixArgs),
    /// Vortex patch with a cusp.
    Cusp(CuspArgs),
    /// First Dirichlet eigenvalue.
    Eigen(EigenArgs),
    /// Human-readable summary of a JSON report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// disk, square, pentagon, disk:cx,cy,r, rect:x0,y0,x1,y1 or
    /// polygon:x,y;x,y;...
    #[arg(long, default_value = "disk")]
    pub domain: String,
    /// Cell width; `1/128` style fractions are accepted.
    #[arg(long, default_value = "1/64", value_parser = parse_h)]
    pub h: f64,
    #[arg(long, default_value = "radial-poly")]
    pub preset: String,
    /// Preset parameter `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value = "min")]
    pub direction: Extremum,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
    /// Also write PGM heatmaps.
    #[arg(long)]
    pub heatmaps: bool,
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 64)]
    pub levels: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AppendixArgs {
    #[arg(long, default_value = "1/128", value_parser = parse_h)]
    pub h: f64,
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Also compute the minimizer, to this tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CuspArgs {
    #[arg(long, default_value = "disk")]
    pub domain: String,
    #[arg(long, default_value = "1/128", value_parser = parse_h)]
    pub h: f64,
    /// Patch parameters; the patch is the zero set unless `invert=false`.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Residual tolerance; a two-valued class moves in whole node swaps.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long, default_value = "disk")]
    pub domain: String,
    #[arg(long, default_value = "1/64", value_parser = parse_h)]
    pub h: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// A JSON report written by another subcommand.
    pub input: PathBuf,
}

/// What a command produced: text for stdout and the invariant checks that
/// failed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub summary: String,
    pub failures: Vec<String>,
}

/// Exit status for an error: `1` for usage and I/O problems, `2` otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_)
        | Error::Io { .. }
        | Error::Format { .. }
        | Error::VersionMismatch { .. }
        | Error::ChecksumMismatch(_)
        | Error::UnknownPreset(_)
        | Error::BadParams(_)
        | Error::DegenerateDomain(_)
        | Error::ResolutionTooCoarse(_) => 1,
        _ => 2,
    }
}

/// Cell width from `0.015625` or `1/64`.
pub fn parse_h(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad cell width `{s}`"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad cell width `{s}`"))?;
            a / b
        }
        None => s.trim().parse().map_err(|_| format!("bad cell width `{s}`"))?,
    };
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("cell width must be positive, got `{s}`"))
    }
}

fn numbers(s: &str, sep: char) -> Result<Vec<f64>> {
    s.split(sep)
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad number `{t}` in domain")))
        })
        .collect()
}

pub fn parse_domain(s: &str) -> Result<ConvexDomain> {
    match s.split_once(':') {
        None => match s {
            "disk" => Ok(ConvexDomain::unit_disk()),
            "square" => ConvexDomain::rectangle(0.0, 0.0, 1.0, 1.0),
            "pentagon" => ConvexDomain::regular_polygon(5, [0.0, 0.0], 1.0, PI / 2.0),
            other => Err(Error::Usage(format!("unknown domain `{other}`"))),
        },
        Some(("disk", rest)) => match numbers(rest, ',')?.as_slice() {
            [x, y, r] => ConvexDomain::disk([*x, *y], *r),
            _ => Err(Error::Usage("disk needs cx,cy,r".into())),
        },
        Some(("rect", rest)) => match numbers(rest, ',')?.as_slice() {
            [x0, y0, x1, y1] => ConvexDomain::rectangle(*x0, *y0, *x1, *y1),
            _ => Err(Error::Usage("rect needs x0,y0,x1,y1".into())),
        },
        Some(("polygon", rest)) => {
            let vertices = rest
                .split(';')
                .map(|p| match numbers(p, ',')?.as_slice() {
                    [x, y] => Ok([*x, *y]),
                    _ => Err(Error::Usage(format!("bad vertex `{p}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            ConvexDomain::polygon(vertices)
        }
        Some((kind, _)) => Err(Error::Usage(format!("unknown domain `{kind}`"))),
    }
}

pub fn parse_params(items: &[String]) -> Result<PresetParams> {
    let mut out = BTreeMap::new();
    for it in items {
        let (k, v) = it
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("parameter `{it}` is not key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Writes `value` as `<out>/<name>.json` wrapped with the command name.
fn write_report<T: Serialize>(out: &Path, command: &str, value: &T) -> Result<PathBuf> {
    #[derive(Serialize)]
    struct Wrapped<'a, T> {
        command: &'a str,
        #[serde(flatten)]
        value: &'a T,
    }
    create_dir(out)?;
    let path = out.join(format!("{command}.json"));
    write_json(&path, &Wrapped { command, value })?;
    Ok(path)
}

fn sample(field: &FieldArgs) -> Result<(Arc<Grid>, ScalarField, FieldMeta)> {
    let grid = build_grid(parse_domain(&field.domain)?, field.h)?;
    let params = parse_params(&field.params)?;
    let omega0 = Preset::parse(&field.preset, &params)?.sample(&grid)?;
    let meta = FieldMeta {
        name: "omega0".into(),
        preset: Some(field.preset.clone()),
        params,
    };
    Ok((grid, omega0, meta))
}

fn steady_options(tol: f64, max_iters: usize) -> SteadyOptions {
    SteadyOptions {
        tol,
        max_iters,
        ..Default::default()
    }
}

fn steady_failures(state: &SteadyState, omega0: &ScalarField) -> Vec<String> {
    let mut f = Vec::new();
    if !state.converged {
        f.push(format!(
            "no convergence after {} iterations (residual {:e})",
            state.iterations, state.fixed_point_residual
        ));
    }
    if !state.omega.same_distribution(omega0) {
        f.push("distribution of omega differs from omega0".into());
    }
    if state.direction == Extremum::Max
        && state
            .energy_history
            .windows(2)
            .any(|w| w[1] < w[0] - 1e-9 * w[0].abs())
    {
        f.push("maximizer energy decreased".into());
    }
    f
}

fn run_solve(a: &SolveArgs) -> Result<Outcome> {
    let (_, omega0, meta) = sample(&a.field)?;
    let state = crate::steady::extremize_energy(&omega0, a.direction, &steady_options(a.tol, a.max_iters))?;
    let path = write_run_dir(&a.field.out, &state, &meta, a.heatmaps)?;
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "{:?} after {} iterations: energy {:.10e}, residual {:e}, converged {}",
        state.direction,
        state.iterations,
        state.energy(),
        state.fixed_point_residual,
        state.converged
    );
    let _ = writeln!(summary, "report: {}", path.display());
    Ok(Outcome {
        summary,
        failures: steady_failures(&state, &omega0),
    })
}

fn run_topology(a: &TopologyArgs) -> Result<Outcome> {
    let (_, omega0, _) = sample(&a.field)?;
    let rep = check_level_topology(&omega0, a.levels, a.tol)?;
    let path = write_report(&a.field.out, "topology", &rep)?;
    let verdict = serde_json::to_string(&rep.verdict).unwrap_or_default();
    Ok(Outcome {
        summary: format!(
            "verdict {verdict}; boundary oscillation {:e}; {} levels\nreport: {}\n",
            rep.boundary_oscillation,
            rep.levels.len(),
            path.display()
        ),
        failures: Vec::new(),
    })
}

fn run_witness(a: &TopologyArgs) -> Result<Outcome> {
    let (_, omega0, meta) = sample(&a.field)?;
    let state = crate::steady::extremize_energy(&omega0, Extremum::Min, &steady_options(1e-6, a.max_iters))?;
    let opts = WitnessOptions {
        n_levels: a.levels,
        tol: a.tol,
    };
    let rep = nonexistence_witness(&omega0, &state, &opts)?;
    write_run_dir(a.field.out.join("minimizer"), &state, &meta, false)?;
    let path = write_report(&a.field.out, "witness", &rep)?;
    let mut failures = Vec::new();
    if !(rep.lower_bound > 0.0) {
        failures.push("witness bound is not positive".into());
    }
    Ok(Outcome {
        summary: format!(
            "{:?} via {:?}: |v - omega|_inf >= {:.6}\nreport: {}\n",
            rep.kind,
            rep.mechanism,
            rep.lower_bound,
            path.display()
        ),
        failures,
    })
}

fn run_sweep(a: &SweepArgs) -> Result<Outcome> {
    let (records, rep) = geometry_sweep(a.n, a.seed, a.tol)?;
    create_dir(&a.out)?;
    write_jsonl(a.out.join("sweep.jsonl"), &records)?;
    let repro = write_reproducers(&a.out, &records)?;
    let path = write_report(&a.out, "geometry-sweep", &rep)?;
    let mut failures: Vec<String> = repro
        .iter()
        .map(|p| format!("diam(A) bound fails; reproducer {}", p.display()))
        .collect();
    for inj in &rep.injected {
        if !inj.report.passes_outer {
            failures.push(format!("{} fails the diam(A) bound", inj.name));
        }
    }
    Ok(Outcome {
        summary: format!(
            "{} rings: {} diam(A) failures, {} diam(D) failures, min ratio {:.6} (ring {})\nreport: {}\n",
            rep.summary.instances,
            rep.summary.failures_outer,
            rep.summary.failures_inner,
            rep.summary.min_ratio,
            rep.summary.min_ratio_index,
            path.display()
        ),
        failures,
    })
}

fn run_appendix(a: &AppendixArgs) -> Result<Outcome> {
    let grid = build_grid(ConvexDomain::unit_disk(), a.h)?;
    let params = parse_params(&a.params)?;
    let preset = Preset::parse("appendix-A", &params)?;
    let opts = AppendixOptions {
        minimizer: a.tol.map(|t| steady_options(t, a.max_iters)),
        ..Default::default()
    };
    let (rep, u) = appendix_experiment(&grid, &preset, &opts)?;
    let meta = FieldMeta {
        name: "rearranged".into(),
        preset: Some("appendix-A".into()),
        params,
    };
    create_dir(&a.out)?;
    save_field(a.out.join("rearranged"), &u, &meta)?;
    let path = write_report(&a.out, "appendix", &rep)?;
    let mut failures = Vec::new();
    if rep.formula_max_rel_error > 0.02 {
        failures.push(format!("formula error {:.4} above 2%", rep.formula_max_rel_error));
    }
    if !(rep.energy_gap > 0.0) {
        failures.push(format!("rearrangement did not lower the energy (gap {:e})", rep.energy_gap));
    }
    if (rep.exponent - 8.0 / 3.0).abs() > 0.1 {
        failures.push(format!("radial exponent {:.4} not near 8/3", rep.exponent));
    }
    Ok(Outcome {
        summary: format!(
            "mu0 {:.12}; formula error {:.3e}; energy gap {:.6e}; exponent {:.4}\nreport: {}\n",
            rep.mu0,
            rep.formula_max_rel_error,
            rep.energy_gap,
            rep.exponent,
            path.display()
        ),
        failures,
    })
}

fn run_cusp(a: &CuspArgs) -> Result<Outcome> {
    let grid = build_grid(parse_domain(&a.domain)?, a.h)?;
    let mut params = parse_params(&a.params)?;
    params.entry("invert".into()).or_insert_with(|| "true".into());
    let preset = Preset::parse("cusp-patch", &params)?;
    let opts = CuspOptions {
        steady: steady_options(a.tol, a.max_iters),
        ..Default::default()
    };
    let (rep, state) = cusp_patch_experiment(&grid, &preset, &opts)?;
    let meta = FieldMeta {
        name: "omega0".into(),
        preset: Some("cusp-patch".into()),
        params,
    };
    write_run_dir(a.out.join("minimizer"), &state, &meta, false)?;
    let path = write_report(&a.out, "cusp", &rep)?;
    let mut failures = Vec::new();
    if let Some(p) = rep.width_exponent {
        if p <= 1.0 {
            failures.push(format!("patch width exponent {p:.3} is not above 1"));
        }
    }
    Ok(Outcome {
        summary: format!(
            "patch defect {:.4}, minimizer defect {:.4}, width exponent {}, |omega - omega0|_inf {}\nreport: {}\n",
            rep.input_defect,
            rep.minimizer_defect,
            rep.width_exponent.map_or("n/a".into(), |p| format!("{p:.4}")),
            rep.linf_distance,
            path.display()
        ),
        failures: failures.into_iter().chain(steady_failures(&state, &state.omega)).collect(),
    })
}

#[derive(Serialize)]
struct EigenSummary {
    domain: ConvexDomain,
    h: f64,
    lambda1: f64,
    rayleigh_residual: f64,
    iterations: usize,
}

fn run_eigen(a: &EigenArgs) -> Result<Outcome> {
    let grid = build_grid(parse_domain(&a.domain)?, a.h)?;
    let eig = first_eigenvalue(&grid, a.tol)?;
    create_dir(&a.out)?;
    save_field(a.out.join("eigenfield"), &eig.eigenfield, &FieldMeta::named("eigenfield"))?;
    let rep = EigenSummary {
        domain: grid.domain().clone(),
        h: grid.h(),
        lambda1: eig.lambda1,
        rayleigh_residual: eig.rayleigh_residual,
        iterations: eig.iterations,
    };
    let path = write_report(&a.out, "eigen", &rep)?;
    Ok(Outcome {
        summary: format!("lambda1 {:.10}\nreport: {}\n", eig.lambda1, path.display()),
        failures: Vec::new(),
    })
}

fn run_report(a: &ReportArgs) -> Result<Outcome> {
    let value: serde_json::Value = read_json(&a.input)?;
    Ok(Outcome {
        summary: render(&value),
        failures: Vec::new(),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Topology(a) => run_topology(a),
        Command::Witness(a) => run_witness(a),
        Command::GeometrySweep(a) => run_sweep(a),
        Command::Appendix(a) => run_appendix(a),
        Command::Cusp(a) => run_cusp(a),
        Command::Eigen(a) => run_eigen(a),
        Command::Report(a) => run_report(a),
    }
}
