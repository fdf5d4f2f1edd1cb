//! Command-line front end: `solve`, `bench` and `report`.
//!
//! Exit codes: 0 when the run finished (eps-optimal for `solve`), 2 when
//! `solve` stopped on the time or iteration limit, 1 on any error.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;

use crate::bench::export;
use crate::bench::instance::{self, InstanceFormat, SynthKind};
use crate::bench::residue::{self, BudgetKind, ResidueSeries};
use crate::bench::sweep::{self, Manifest, Sweep, SweepInstance};
use crate::engine::{self, ConfigName, LocalSolverKind, SolveStatus, SolverConfig};
use crate::error::{Error, Result};
use crate::milp::BackendKind;
use crate::model::BinaryPoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gradcut",
    version,
    about = "Cutting-plane solver for binary quadratic minimization with a cardinality constraint",
    after_help = "Exit codes: 0 finished (solve: eps-optimal), 2 solve hit the time or iteration limit, 1 error.\n\
                  GRADCUT_BACKEND=highs|brute selects the default MILP backend."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance with one configuration.
    Solve(SolveArgs),
    /// Run every (instance x configuration) cell and write traces plus a manifest.
    Bench(BenchArgs),
    /// Residue profiles and distributions from a bench output directory.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Gap tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Wall-clock limit per run, in seconds.
    #[arg(long, default_value_t = 100.0)]
    pub time_limit: f64,
    /// Outer-iteration cap.
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Cardinality m; overrides the value stored in the instance file.
    #[arg(long)]
    pub cardinality: Option<usize>,
    /// Instance file format.
    #[arg(long, default_value = "auto")]
    pub format: InstanceFormat,
    /// MILP backend (default: highs when built in, or $GRADCUT_BACKEND).
    #[arg(long)]
    pub backend: Option<BackendKind>,
    #[arg(long, value_enum, default_value_t = LocalArg::Pgm)]
    pub local_solver: LocalArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocalArg {
    Pgm,
    TrustRegion,
}

impl SolverArgs {
    fn config(&self, name: ConfigName) -> Result<SolverConfig> {
        if !(self.time_limit >= 0.0 && self.time_limit.is_finite()) {
            return Err(Error::Usage(format!("invalid time limit {}", self.time_limit)));
        }
        let cfg = SolverConfig {
            epsilon: self.epsilon,
            time_limit: Duration::from_secs_f64(self.time_limit),
            max_iters: self.max_iters,
            local_solver: match self.local_solver {
                LocalArg::Pgm => LocalSolverKind::Pgm,
                LocalArg::TrustRegion => LocalSolverKind::TrustRegion,
            },
            ..SolverConfig::preset(name)
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn backend(&self) -> BackendKind {
        self.backend.unwrap_or_else(BackendKind::default_kind)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, default_value = "cpm")]
    pub config: ConfigName,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Start point as a 0/1 string; default is the first m entries set.
    #[arg(long)]
    pub x0: Option<String>,
    /// Write the trace here (`.json` for JSON, anything else CSV).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance files.
    pub instances: Vec<PathBuf>,
    /// Comma-separated configurations.
    #[arg(long, value_delimiter = ',', default_value = "cpm,pgm,pgm-tau,pgm-lb,pgm-tau-lb")]
    pub config: Vec<ConfigName>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output directory for traces and the manifest.
    #[arg(long, default_value = "bench-out")]
    pub out: PathBuf,
    /// Run cells in parallel (timings become less reliable).
    #[arg(long)]
    pub parallel: bool,
    /// Also generate this many synthetic instances.
    #[arg(long, default_value_t = 0)]
    pub synthetic: usize,
    #[arg(long, value_enum, default_value_t = SynthArg::MdpLike)]
    pub synth_kind: SynthArg,
    /// Size of synthetic instances.
    #[arg(long, default_value_t = 20)]
    pub synth_n: usize,
    /// Cardinality of synthetic instances (default n/5, at least 1).
    #[arg(long)]
    pub synth_m: Option<usize>,
    /// Seed of the first synthetic instance; later ones use seed+1, seed+2, ...
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthArg {
    PsdRandom,
    MdpLike,
    NonconvexRandom,
}

impl From<SynthArg> for SynthKind {
    fn from(a: SynthArg) -> Self {
        match a {
            SynthArg::PsdRandom => SynthKind::PsdRandom,
            SynthArg::MdpLike => SynthKind::MdpLike,
            SynthArg::NonconvexRandom => SynthKind::NonconvexRandom,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory written by `bench`.
    pub dir: PathBuf,
    /// JSON object mapping instance names to best known values.
    #[arg(long)]
    pub best_known: Option<PathBuf>,
    /// Budgets at which to report residue distributions.
    #[arg(long)]
    pub budget: Vec<f64>,
    /// Axis of the `--budget` values.
    #[arg(long, value_enum, default_value_t = AxisArg::Runtime)]
    pub budget_kind: AxisArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Both)]
    pub format: ReportFormat,
    /// Output directory (default: the input directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of grid points of the median profiles.
    #[arg(long, default_value_t = 101)]
    pub grid_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Iterations,
    Runtime,
}

impl From<AxisArg> for BudgetKind {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Iterations => BudgetKind::Iterations,
            AxisArg::Runtime => BudgetKind::Runtime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Svg,
    Both,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Report(args) => cmd_report(args),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    let cfg = args.solver.config(args.config)?;
    let inst = instance::parse_instance(&args.instance, args.solver.format, args.solver.cardinality)?;
    let mut backend = args.solver.backend().create()?;
    let x0 = match &args.x0 {
        Some(s) => {
            let x = BinaryPoint::parse(s)?;
            if x.len() != inst.dom.dim() {
                return Err(Error::dim("--x0", inst.dom.dim(), x.len()));
            }
            x
        }
        None => inst.default_start(&mut backend)?,
    };
    let mut out = engine::run(&mut backend, &inst.obj, &inst.dom, &x0, &cfg)?;
    out.trace.instance_name = inst.name.clone();
    let runtime = out.trace.last().map_or(0.0, |r| r.t);
    println!("instance={}", inst.name);
    println!("config={}", args.config);
    println!("f_best={}", out.f_best);
    println!("x_best={}", out.x_best);
    println!("gap={}", out.gap);
    println!("status={}", status_str(out.status));
    println!("iterations={}", out.iterations);
    println!("runtime={runtime:.6}");
    if let Some(path) = &args.out {
        if path.extension().is_some_and(|e| e == "json") {
            export::write_json(&out.trace, path)?;
        } else {
            export::write_trace_csv(&out.trace, path)?;
        }
    }
    Ok(match out.status {
        SolveStatus::EpsOptimal => EXIT_OK,
        SolveStatus::TimeLimit | SolveStatus::IterLimit => EXIT_LIMIT,
    })
}

fn status_str(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::EpsOptimal => "eps_optimal",
        SolveStatus::TimeLimit => "time_limit",
        SolveStatus::IterLimit => "iter_limit",
    }
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32> {
    if args.config.is_empty() {
        return Err(Error::Usage("no configuration given".into()));
    }
    let base = args.solver.config(ConfigName::Cpm)?;
    let mut instances: Vec<SweepInstance> = args
        .instances
        .iter()
        .map(|path| {
            match instance::parse_instance(path, args.solver.format, args.solver.cardinality) {
                Ok(inst) => SweepInstance::Loaded(inst),
                Err(e) => {
                    warn!("skipping {}: {e}", path.display());
                    SweepInstance::Failed {
                        name: path.display().to_string(),
                        error: e.to_string(),
                    }
                }
            }
        })
        .collect();
    let m = args.synth_m.unwrap_or((args.synth_n / 5).max(1));
    for i in 0..args.synthetic {
        let inst = instance::synth_instance(args.synth_n, m, args.synth_kind.into(), args.seed + i as u64)?;
        instances.push(SweepInstance::Loaded(inst));
    }
    if instances.is_empty() {
        return Err(Error::Usage("no instances given".into()));
    }
    let manifest = sweep::run_sweep(&Sweep {
        instances,
        configs: args.config.clone(),
        base,
        backend: args.solver.backend(),
        parallel: args.parallel,
        out_dir: args.out.clone(),
    })?;
    let failed = manifest.cells.iter().filter(|c| c.failed()).count();
    println!(
        "cells={} failed={} manifest={}",
        manifest.cells.len(),
        failed,
        args.out.join(sweep::MANIFEST_FILE).display()
    );
    Ok(if manifest.all_failed() { EXIT_ERROR } else { EXIT_OK })
}

/// Residue series per configuration, restricted to the instances every
/// configuration solved. Keys are configuration names in manifest order.
pub fn collect_series(
    dir: &Path,
    manifest: &Manifest,
    best_known: &HashMap<String, f64>,
    kind: BudgetKind,
) -> Result<BTreeMap<ConfigName, Vec<ResidueSeries>>> {
    let mut traces: BTreeMap<ConfigName, BTreeMap<String, crate::trace::RunTrace>> = BTreeMap::new();
    for cell in manifest.cells.iter().filter(|c| !c.failed()) {
        let (Some(file), Some(f0)) = (&cell.trace_file, cell.f0) else {
            continue;
        };
        let trace = export::read_trace_csv(&dir.join(file), cell.config.as_str(), &cell.instance, f0)?;
        traces.entry(cell.config).or_default().insert(cell.instance.clone(), trace);
    }
    if traces.is_empty() {
        return Err(Error::Usage(format!("no successful runs in {}", dir.display())));
    }
    let sets: Vec<BTreeSet<&String>> = traces.values().map(|m| m.keys().collect()).collect();
    let common: BTreeSet<String> = sets
        .iter()
        .skip(1)
        .fold(sets[0].clone(), |acc, s| acc.intersection(s).copied().collect())
        .into_iter()
        .cloned()
        .collect();
    if sets.iter().any(|s| s.len() != common.len()) {
        warn!(
            "configurations cover different instance sets; using the {} common instances",
            common.len()
        );
    }
    if common.is_empty() {
        return Err(Error::Data("no instance was solved by every configuration".into()));
    }

    let mut f_star: HashMap<&str, f64> = HashMap::new();
    for name in &common {
        let from_runs = traces
            .values()
            .map(|m| m[name].best_value())
            .fold(f64::INFINITY, f64::min);
        let fallback = manifest
            .cells
            .iter()
            .find(|c| &c.instance == name)
            .and_then(|c| c.best_known);
        let v = best_known.get(name).copied().or(fallback).unwrap_or(from_runs);
        f_star.insert(name, v);
    }

    let mut out = BTreeMap::new();
    for (config, by_inst) in &traces {
        let series = common
            .iter()
            .map(|name| residue::residue(&by_inst[name], f_star[name.as_str()], kind))
            .collect::<Result<Vec<_>>>()?;
        out.insert(*config, series);
    }
    Ok(out)
}

fn max_budget(series: &BTreeMap<ConfigName, Vec<ResidueSeries>>) -> f64 {
    series
        .values()
        .flatten()
        .filter_map(|s| s.points.last().map(|p| p.budget))
        .fold(0.0, f64::max)
}

pub fn cmd_report(args: &ReportArgs) -> Result<i32> {
    let manifest = Manifest::load(&args.dir)?;
    let best_known = match &args.best_known {
        Some(p) => instance::load_best_known(p)?,
        None => HashMap::new(),
    };
    let out_dir = args.out.clone().unwrap_or_else(|| args.dir.clone());
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    let csv = args.format != ReportFormat::Svg;
    let svg = args.format != ReportFormat::Csv;

    for (kind, label) in [
        (BudgetKind::Iterations, "iterations"),
        (BudgetKind::Runtime, "runtime"),
    ] {
        let series = collect_series(&args.dir, &manifest, &best_known, kind)?;
        let grid = residue::linear_grid(max_budget(&series), args.grid_points);
        let profiles = series
            .iter()
            .map(|(c, s)| Ok((c.to_string(), residue::median_profile(s, &grid)?)))
            .collect::<Result<Vec<_>>>()?;
        if csv {
            let path = out_dir.join(format!("profile_{label}.csv"));
            export::write_text(&path, &export::profiles_to_csv(&profiles)?)?;
        }
        if svg {
            let path = out_dir.join(format!("profile_{label}.svg"));
            export::write_text(&path, &export::profiles_to_svg(&profiles, kind))?;
        }
        for (config, points) in &profiles {
            if let Some(last) = points.last() {
                println!(
                    "{label}: {config} final median residue {:.3e} (q1 {:.3e}, q3 {:.3e})",
                    last.median, last.q1, last.q3
                );
            }
        }

        if kind != args.budget_kind.into() {
            continue;
        }
        for &budget in &args.budget {
            let dists = series
                .iter()
                .map(|(c, s)| Ok((c.to_string(), residue::residue_distribution(s, budget)?)))
                .collect::<Result<Vec<_>>>()?;
            if csv {
                let path = out_dir.join(format!("distribution_{label}_{budget}.csv"));
                export::write_text(&path, &export::distributions_to_csv(&dists)?)?;
            }
            if svg {
                let path = out_dir.join(format!("distribution_{label}_{budget}.svg"));
                export::write_text(&path, &export::distributions_to_svg(&dists, budget))?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn bench_config_list_parses() {
        let cli = Cli::try_parse_from(["gradcut", "bench", "--config", "cpm,pgm-tau-lb"]).unwrap();
        let Command::Bench(b) = cli.command else { panic!() };
        assert_eq!(b.config, vec![ConfigName::Cpm, ConfigName::PgmTauLb]);
        assert!(Cli::try_parse_from(["gradcut", "bench", "--config", "pgm-xx"]).is_err());
    }
}
