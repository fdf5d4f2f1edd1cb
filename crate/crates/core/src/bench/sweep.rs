//! Benchmark sweeps over (instance x configuration) cells.

use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::export;
use super::instance::Instance;
use crate::engine::{self, ConfigName, SolveStatus, SolverConfig};
use crate::error::{Error, Result};
use crate::milp::BackendKind;

pub const MANIFEST_FILE: &str = "manifest.json";

/// An instance slot in a sweep. Load failures are kept so the manifest can
/// record them.
#[derive(Debug, Clone)]
pub enum SweepInstance {
    Loaded(Instance),
    Failed { name: String, error: String },
}

impl SweepInstance {
    pub fn name(&self) -> &str {
        match self {
            SweepInstance::Loaded(inst) => &inst.name,
            SweepInstance::Failed { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub instances: Vec<SweepInstance>,
    pub configs: Vec<ConfigName>,
    /// Shared parameters; the three flags are overwritten per cell.
    pub base: SolverConfig,
    pub backend: BackendKind,
    pub parallel: bool,
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub instance: String,
    pub config: ConfigName,
    /// `None` when the cell failed.
    pub status: Option<SolveStatus>,
    pub f0: Option<f64>,
    pub f_best: Option<f64>,
    pub best_known: Option<f64>,
    pub iterations: Option<usize>,
    /// Wall seconds, including start-point construction.
    pub runtime: f64,
    /// Relative to the manifest directory.
    pub trace_file: Option<String>,
    pub error: Option<String>,
}

impl CellRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub backend: BackendKind,
    pub epsilon: f64,
    pub time_limit: f64,
    pub cells: Vec<CellRecord>,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Manifest> {
        let path = dir.join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn all_failed(&self) -> bool {
        self.cells.iter().all(CellRecord::failed)
    }
}

/// File-name-safe form of an instance name.
pub fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' })
        .collect()
}

pub fn trace_file_name(instance: &str, config: ConfigName) -> String {
    format!("{}__{}.csv", sanitize(instance), config.as_str())
}

/// Runs every cell in instance-major order and writes one trace CSV per
/// successful cell plus the manifest. Cell failures are recorded, not
/// propagated.
pub fn run_sweep(sweep: &Sweep) -> Result<Manifest> {
    std::fs::create_dir_all(&sweep.out_dir).map_err(|e| Error::io(&sweep.out_dir, e))?;
    let cells: Vec<(&SweepInstance, ConfigName)> = sweep
        .instances
        .iter()
        .flat_map(|inst| sweep.configs.iter().map(move |&c| (inst, c)))
        .collect();
    let run_one = |&(inst, config): &(&SweepInstance, ConfigName)| run_cell(sweep, inst, config);
    let records: Vec<CellRecord> = if sweep.parallel {
        cells.par_iter().map(run_one).collect()
    } else {
        cells.iter().map(run_one).collect()
    };
    let manifest = Manifest {
        backend: sweep.backend,
        epsilon: sweep.base.epsilon,
        time_limit: sweep.base.time_limit.as_secs_f64(),
        cells: records,
    };
    export::write_json(&manifest, &sweep.out_dir.join(MANIFEST_FILE))?;
    Ok(manifest)
}

fn run_cell(sweep: &Sweep, inst: &SweepInstance, config: ConfigName) -> CellRecord {
    let started = Instant::now();
    let mut record = CellRecord {
        instance: inst.name().to_string(),
        config,
        status: None,
        f0: None,
        f_best: None,
        best_known: None,
        iterations: None,
        runtime: 0.0,
        trace_file: None,
        error: None,
    };
    let inst = match inst {
        SweepInstance::Loaded(inst) => inst,
        SweepInstance::Failed { error, .. } => {
            record.error = Some(error.clone());
            return record;
        }
    };
    record.best_known = inst.best_known;
    match solve_cell(sweep, inst, config) {
        Ok((outcome, file)) => {
            info!(
                "{} / {}: f_best={} status={:?} iterations={}",
                inst.name, config, outcome.f_best, outcome.status, outcome.iterations
            );
            record.status = Some(outcome.status);
            record.f0 = Some(outcome.trace.f0);
            record.f_best = Some(outcome.f_best);
            record.iterations = Some(outcome.iterations);
            record.trace_file = Some(file);
        }
        Err(e) => {
            warn!("{} / {} failed: {e}", inst.name, config);
            record.error = Some(e.to_string());
        }
    }
    record.runtime = started.elapsed().as_secs_f64();
    record
}

fn solve_cell(
    sweep: &Sweep,
    inst: &Instance,
    config: ConfigName,
) -> Result<(engine::SolveOutcome, String)> {
    let mut backend = sweep.backend.create()?;
    let x0 = inst.default_start(&mut backend)?;
    let (use_local_solver, use_offset, use_lb_cuts) = config.flags();
    let cfg = SolverConfig {
        use_local_solver,
        use_offset,
        use_lb_cuts,
        ..sweep.base.clone()
    };
    let mut outcome = engine::run(&mut backend, &inst.obj, &inst.dom, &x0, &cfg)?;
    outcome.trace.instance_name = inst.name.clone();
    let file = trace_file_name(&inst.name, config);
    export::write_trace_csv(&outcome.trace, &sweep.out_dir.join(&file))?;
    Ok((outcome, file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::instance::{synth_instance, SynthKind};

    fn sweep(dir: &Path, parallel: bool) -> Sweep {
        Sweep {
            instances: vec![
                SweepInstance::Loaded(synth_instance(6, 2, SynthKind::PsdRandom, 1).unwrap()),
                SweepInstance::Failed {
                    name: "missing".into(),
                    error: "no such file".into(),
                },
                SweepInstance::Loaded(synth_instance(7, 3, SynthKind::MdpLike, 2).unwrap()),
            ],
            configs: ConfigName::ALL.to_vec(),
            base: SolverConfig::default(),
            backend: BackendKind::Brute,
            parallel,
            out_dir: dir.to_path_buf(),
        }
    }

    fn strip_timing(mut m: Manifest) -> Manifest {
        for c in &mut m.cells {
            c.runtime = 0.0;
        }
        m
    }

    #[test]
    fn counts_failures_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let m = run_sweep(&sweep(dir.path(), false)).unwrap();
        assert_eq!(m.cells.len(), 15);
        assert_eq!(m.cells.iter().filter(|c| c.failed()).count(), 5);
        assert!(!m.all_failed());
        let csvs = std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "csv"))
            .count();
        assert_eq!(csvs, 10);
        assert_eq!(Manifest::load(dir.path()).unwrap(), m);
    }

    #[test]
    fn parallel_matches_serial() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let serial = run_sweep(&sweep(a.path(), false)).unwrap();
        let par = run_sweep(&sweep(b.path(), true)).unwrap();
        assert_eq!(strip_timing(serial), strip_timing(par));
    }

    #[test]
    fn sanitized_names() {
        assert_eq!(sanitize("a b/c.txt"), "a_b_c.txt");
        assert_eq!(trace_file_name("x", ConfigName::PgmTauLb), "x__pgm-tau-lb.csv");
    }
}
