//! The outer cutting-plane loop with optional local search, offset cuts and
//! lower-bound cuts.
//!
//! With every flag off the loop is the classical cutting-plane method: solve
//! the cutting-plane MILP, cut at its solution, repeat until the bound gap
//! closes. With `use_local_solver` the MILP solution seeds a projected
//! gradient (or trust-region) search restricted to points whose cut values
//! do not exceed the incumbent, and the cut is placed at the point the local
//! search returns.

use std::fmt;
use std::time::{Duration, Instant};

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::{self, PgmParams, Termination, TrustRegionParams};
use crate::milp::{self, remaining, MilpBackend, MilpStatusKind};
use crate::model::{
    BinaryPoint, Cut, CutOracle, FeasibleDomain, LinearRow, QuadraticObjective, FEAS_TOL,
};
use crate::trace::{RunTrace, TraceRecord};

/// The five named flag combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConfigName {
    #[serde(rename = "cpm")]
    Cpm,
    #[serde(rename = "pgm")]
    Pgm,
    #[serde(rename = "pgm-tau")]
    PgmTau,
    #[serde(rename = "pgm-lb")]
    PgmLb,
    #[serde(rename = "pgm-tau-lb")]
    PgmTauLb,
}

impl ConfigName {
    pub const ALL: [ConfigName; 5] = [
        ConfigName::Cpm,
        ConfigName::Pgm,
        ConfigName::PgmTau,
        ConfigName::PgmLb,
        ConfigName::PgmTauLb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConfigName::Cpm => "cpm",
            ConfigName::Pgm => "pgm",
            ConfigName::PgmTau => "pgm-tau",
            ConfigName::PgmLb => "pgm-lb",
            ConfigName::PgmTauLb => "pgm-tau-lb",
        }
    }

    /// `(use_local_solver, use_offset, use_lb_cuts)`.
    pub fn flags(self) -> (bool, bool, bool) {
        match self {
            ConfigName::Cpm => (false, false, false),
            ConfigName::Pgm => (true, false, false),
            ConfigName::PgmTau => (true, true, false),
            ConfigName::PgmLb => (true, false, true),
            ConfigName::PgmTauLb => (true, true, true),
        }
    }

    pub fn from_flags(use_local_solver: bool, use_offset: bool, use_lb_cuts: bool) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.flags() == (use_local_solver, use_offset, use_lb_cuts))
    }
}

impl fmt::Display for ConfigName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConfigName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown configuration {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalSolverKind {
    Pgm,
    TrustRegion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub use_local_solver: bool,
    pub use_offset: bool,
    pub use_lb_cuts: bool,
    pub epsilon: f64,
    pub tau0: f64,
    pub kappa_g: f64,
    pub kappa_tau: f64,
    pub time_limit: Duration,
    /// Outer-iteration cap.
    pub max_iters: usize,
    pub local_solver: LocalSolverKind,
    pub pgm: PgmParams,
    pub trust_region: TrustRegionParams,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            use_local_solver: false,
            use_offset: false,
            use_lb_cuts: false,
            epsilon: 1e-9,
            tau0: f64::INFINITY,
            kappa_g: 0.1,
            kappa_tau: 0.5,
            time_limit: Duration::from_secs(100),
            max_iters: 10_000,
            local_solver: LocalSolverKind::Pgm,
            pgm: PgmParams::default(),
            trust_region: TrustRegionParams::default(),
        }
    }
}

impl SolverConfig {
    pub fn preset(name: ConfigName) -> Self {
        let (use_local_solver, use_offset, use_lb_cuts) = name.flags();
        SolverConfig {
            use_local_solver,
            use_offset,
            use_lb_cuts,
            ..SolverConfig::default()
        }
    }

    pub fn name(&self) -> Option<ConfigName> {
        ConfigName::from_flags(self.use_local_solver, self.use_offset, self.use_lb_cuts)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::Usage(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.tau0 > 0.0) {
            return Err(Error::Usage(format!("tau0 must be positive, got {}", self.tau0)));
        }
        if !(self.kappa_tau > 0.0 && self.kappa_tau < 1.0) {
            return Err(Error::Usage(format!("kappa_tau must lie in (0,1), got {}", self.kappa_tau)));
        }
        if !(self.kappa_g > 0.0 && self.kappa_g <= 1.0) {
            return Err(Error::Usage(format!("kappa_g must lie in (0,1], got {}", self.kappa_g)));
        }
        if (self.use_offset || self.use_lb_cuts) && !self.use_local_solver {
            return Err(Error::Usage(
                "use_offset and use_lb_cuts require use_local_solver".into(),
            ));
        }
        match self.local_solver {
            LocalSolverKind::Pgm => self.pgm.validate(),
            LocalSolverKind::TrustRegion => self.trust_region.validate(),
        }
    }
}

/// Mutable state of the outer loop, in the working (possibly regularized)
/// objective scale.
#[derive(Debug, Clone)]
pub struct SolveState {
    pub k: usize,
    pub ub: f64,
    pub lb: f64,
    pub x_ub: BinaryPoint,
    pub tau: f64,
    pub increase_offset: bool,
    pub oracle: CutOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    EpsOptimal,
    TimeLimit,
    IterLimit,
}

/// What happened in one outer iteration that went past the gap test.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationLog {
    pub k: usize,
    pub x_lb: BinaryPoint,
    /// Working-scale bounds at the start of the iteration.
    pub lb: f64,
    pub ub: f64,
    pub x_next: BinaryPoint,
    pub f_next: f64,
    /// Offset used for the local constraint set (zero without offsets).
    pub tau: f64,
    pub offset_backtracks: usize,
    pub local: Option<Termination>,
    /// `<grad f(x_next), x_lb - x_next>`, evaluated when LB cuts are enabled.
    pub lb_inner: Option<f64>,
    pub lb_cut_added: bool,
    pub next_cut_added: bool,
    /// Cut at `x_lb` added because the local point already had a cut and no
    /// LB cut was added.
    pub progress_cut_added: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub x_best: BinaryPoint,
    /// Objective at `x_best` in the original scale.
    pub f_best: f64,
    pub status: SolveStatus,
    /// `UB - LB` at exit.
    pub gap: f64,
    pub iterations: usize,
    pub trace: RunTrace,
    pub log: Vec<IterationLog>,
    /// Objective the cuts were built on (regularized when the input was not PSD).
    pub working_objective: QuadraticObjective,
    pub oracle: CutOracle,
}

impl SolveOutcome {
    pub fn lb_cuts_added(&self) -> usize {
        self.log.iter().filter(|l| l.lb_cut_added).count()
    }
}

/// Rows `<grad, x> <= ub - tau - value + <grad, anchor>`, one per cut.
pub fn build_cut_constraints(oracle: &CutOracle, ub: f64, tau: f64) -> Vec<LinearRow> {
    oracle
        .cuts()
        .iter()
        .map(|c| LinearRow::le(c.grad().to_vec(), ub - tau - c.intercept()))
        .collect()
}

/// Outcome of the offset search for one iteration.
#[derive(Debug, Clone)]
pub struct OffsetSelection {
    pub tau: f64,
    pub rows: Vec<LinearRow>,
    pub increase_offset: bool,
    pub backtracks: usize,
}

/// Caps `tau` by `kappa_g * (ub - lb)`, then shrinks it by `kappa_tau` until
/// the offset cut set meets the domain. Once `tau` drops below `epsilon` the
/// search accepts `tau = 0`, where the incumbent is always feasible.
pub fn select_offset<B: MilpBackend + ?Sized>(
    backend: &mut B,
    state: &SolveState,
    cfg: &SolverConfig,
    dom: &FeasibleDomain,
    budget: Duration,
) -> Result<OffsetSelection> {
    let deadline = Instant::now() + budget;
    let mut tau = state.tau.min(cfg.kappa_g * (state.ub - state.lb));
    let mut increase_offset = state.increase_offset;
    let mut backtracks = 0;
    loop {
        if !(tau >= cfg.epsilon) {
            return Ok(OffsetSelection {
                tau: 0.0,
                rows: build_cut_constraints(&state.oracle, state.ub, 0.0),
                increase_offset,
                backtracks,
            });
        }
        let rows = build_cut_constraints(&state.oracle, state.ub, tau);
        if milp::check_nonempty(backend, dom, &rows, remaining(deadline))? {
            return Ok(OffsetSelection {
                tau,
                rows,
                increase_offset,
                backtracks,
            });
        }
        tau *= cfg.kappa_tau;
        increase_offset = false;
        backtracks += 1;
    }
}

/// Upper bound on the number of shrink steps of [`select_offset`].
pub fn max_offset_backtracks(tau_init: f64, epsilon: f64, kappa_tau: f64) -> usize {
    if tau_init <= epsilon {
        return 1;
    }
    ((tau_init / epsilon).ln() / (1.0 / kappa_tau).ln()).ceil() as usize + 1
}

/// `<grad_next, x_lb - x_next>`.
pub fn lb_cut_inner(grad_next: &[f64], x_lb: &BinaryPoint, x_next: &BinaryPoint) -> f64 {
    x_lb.dot(grad_next) - x_next.dot(grad_next)
}

/// Whether a cut at the lower-bound point should be added: the two points
/// differ and `<grad f(x_next), x_lb - x_next> <= 0`.
pub fn lb_cut_condition(grad_next: &[f64], x_lb: &BinaryPoint, x_next: &BinaryPoint) -> bool {
    x_lb != x_next && lb_cut_inner(grad_next, x_lb, x_next) <= 0.0
}

/// Runs the cutting-plane scheme from `x0`.
///
/// Objectives that fail the PSD test are shifted onto the cardinality slice
/// first; reported values are always in the original scale.
pub fn run<B: MilpBackend + ?Sized>(
    backend: &mut B,
    obj: &QuadraticObjective,
    dom: &FeasibleDomain,
    x0: &BinaryPoint,
    cfg: &SolverConfig,
) -> Result<SolveOutcome> {
    cfg.validate()?;
    if obj.dim() != dom.dim() {
        return Err(Error::dim("objective", dom.dim(), obj.dim()));
    }
    if !dom.contains(x0) {
        return Err(Error::Usage(format!("start point {x0} is not feasible")));
    }
    let start = Instant::now();
    let deadline = start + cfg.time_limit;
    let work = if obj.is_psd() {
        obj.clone()
    } else {
        obj.regularized(dom)?
    };
    let shift = work.shift();
    let name = cfg.name().map_or("custom", ConfigName::as_str);

    let f0 = work.value(x0)?;
    let mut oracle = CutOracle::new();
    oracle.add(Cut::new(&work, x0.clone())?);
    let mut state = SolveState {
        k: 0,
        ub: f0,
        lb: f64::NEG_INFINITY,
        x_ub: x0.clone(),
        tau: cfg.tau0,
        increase_offset: cfg.use_offset,
        oracle,
    };
    let mut trace = RunTrace::new(name, "", f0 - shift);
    let mut log = Vec::new();

    let record = |state: &SolveState, trace: &mut RunTrace| {
        trace.push(TraceRecord {
            k: state.k,
            t: start.elapsed().as_secs_f64(),
            ub: state.ub - shift,
            lb: state.lb - shift,
            n_cuts: state.oracle.len(),
            tau: if cfg.use_offset { state.tau } else { 0.0 },
        });
    };

    let status = loop {
        if state.k >= cfg.max_iters {
            record(&state, &mut trace);
            break SolveStatus::IterLimit;
        }
        if Instant::now() >= deadline {
            record(&state, &mut trace);
            break SolveStatus::TimeLimit;
        }

        let res = milp::solve_cp_model(backend, &state.oracle, dom, remaining(deadline))?;
        let (MilpStatusKind::Optimal, Some(x_lb), Some(theta)) = (res.kind(), res.x, res.theta)
        else {
            if res.status.kind == MilpStatusKind::TimeLimit {
                record(&state, &mut trace);
                break SolveStatus::TimeLimit;
            }
            return Err(Error::Backend(format!(
                "lower-bound model returned {:?}: {}",
                res.status.kind, res.status.message
            )));
        };
        state.lb = state.lb.max(theta);
        record(&state, &mut trace);
        if state.ub - state.lb <= cfg.epsilon {
            break SolveStatus::EpsOptimal;
        }

        let mut entry = IterationLog {
            k: state.k,
            x_lb: x_lb.clone(),
            lb: state.lb,
            ub: state.ub,
            x_next: x_lb.clone(),
            f_next: f64::NAN,
            tau: 0.0,
            offset_backtracks: 0,
            local: None,
            lb_inner: None,
            lb_cut_added: false,
            next_cut_added: false,
            progress_cut_added: false,
        };

        let x_next = if cfg.use_local_solver {
            let rows = if cfg.use_offset {
                let sel = select_offset(backend, &state, cfg, dom, remaining(deadline))?;
                entry.tau = sel.tau;
                entry.offset_backtracks = sel.backtracks;
                state.tau = if sel.increase_offset {
                    sel.tau / cfg.kappa_tau
                } else {
                    sel.tau
                };
                state.increase_offset = sel.increase_offset;
                sel.rows
            } else {
                build_cut_constraints(&state.oracle, state.ub, 0.0)
            };
            match local_start(backend, dom, &rows, &x_lb, deadline)? {
                Some(x_start) => {
                    let budget = remaining(deadline);
                    let lr = match cfg.local_solver {
                        LocalSolverKind::Pgm => {
                            local::pgm_solve(backend, &work, dom, &rows, &x_start, &cfg.pgm, budget)?
                        }
                        LocalSolverKind::TrustRegion => local::tr_solve(
                            backend,
                            &work,
                            dom,
                            &rows,
                            &x_start,
                            &cfg.trust_region,
                            budget,
                        )?,
                    };
                    entry.local = Some(lr.termination);
                    lr.x_final
                }
                None => x_lb.clone(),
            }
        } else {
            x_lb.clone()
        };

        let f_next = work.value(&x_next)?;
        if f_next <= state.ub {
            state.ub = f_next;
            state.x_ub = x_next.clone();
        }
        entry.next_cut_added = state.oracle.add(Cut::new(&work, x_next.clone())?);
        if cfg.use_lb_cuts {
            let grad_next = work.gradient(&x_next)?;
            entry.lb_inner = Some(lb_cut_inner(&grad_next, &x_lb, &x_next));
            if lb_cut_condition(&grad_next, &x_lb, &x_next) {
                entry.lb_cut_added = state.oracle.add(Cut::new(&work, x_lb.clone())?);
            }
        }
        if !entry.next_cut_added && !entry.lb_cut_added {
            entry.progress_cut_added = state.oracle.add(Cut::new(&work, x_lb.clone())?);
            if !entry.progress_cut_added {
                warn!(
                    "iteration {}: no new cut could be added (gap {:.3e}); stopping",
                    state.k,
                    state.ub - state.lb
                );
                entry.x_next = x_next;
                entry.f_next = f_next;
                log.push(entry);
                state.k += 1;
                record(&state, &mut trace);
                break SolveStatus::IterLimit;
            }
        }
        debug!(
            "k={} lb={:.6} ub={:.6} cuts={} tau={}",
            state.k,
            state.lb - shift,
            state.ub - shift,
            state.oracle.len(),
            entry.tau
        );
        entry.x_next = x_next;
        entry.f_next = f_next;
        log.push(entry);
        state.k += 1;
    };

    Ok(SolveOutcome {
        f_best: state.ub - shift,
        x_best: state.x_ub,
        status,
        gap: state.ub - state.lb,
        iterations: state.k,
        trace,
        log,
        working_objective: work,
        oracle: state.oracle,
    })
}

/// Start point for the local solver: the lower-bound point itself when it
/// satisfies the cut rows, otherwise its projection onto `dom ∩ rows`.
/// `None` when no such point is found in time.
fn local_start<B: MilpBackend + ?Sized>(
    backend: &mut B,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    x_lb: &BinaryPoint,
    deadline: Instant,
) -> Result<Option<BinaryPoint>> {
    if rows.iter().all(|r| r.is_satisfied(x_lb, FEAS_TOL)) {
        return Ok(Some(x_lb.clone()));
    }
    let res = milp::project(backend, &x_lb.to_f64(), dom, rows, remaining(deadline))?;
    Ok(match res.kind() {
        MilpStatusKind::Optimal => res.x,
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::BruteForceBackend;

    fn e(i: usize) -> BinaryPoint {
        BinaryPoint::from_indices(3, &[i]).unwrap()
    }

    fn diag() -> QuadraticObjective {
        QuadraticObjective::diagonal(&[2.0, 4.0, 6.0])
    }

    fn oracle(anchors: &[usize]) -> CutOracle {
        let mut o = CutOracle::new();
        for &a in anchors {
            o.add(Cut::new(&diag(), e(a)).unwrap());
        }
        o
    }

    fn state(anchors: &[usize], ub: f64, lb: f64, tau: f64) -> SolveState {
        SolveState {
            k: 0,
            ub,
            lb,
            x_ub: e(0),
            tau,
            increase_offset: true,
            oracle: oracle(anchors),
        }
    }

    #[test]
    fn table_flags() {
        assert_eq!(ConfigName::Cpm.flags(), (false, false, false));
        assert_eq!(ConfigName::Pgm.flags(), (true, false, false));
        assert_eq!(ConfigName::PgmTau.flags(), (true, true, false));
        assert_eq!(ConfigName::PgmLb.flags(), (true, false, true));
        assert_eq!(ConfigName::PgmTauLb.flags(), (true, true, true));
        for c in ConfigName::ALL {
            assert_eq!(c.as_str().parse::<ConfigName>().unwrap(), c);
            assert_eq!(SolverConfig::preset(c).name(), Some(c));
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = SolverConfig::preset(ConfigName::Cpm);
        cfg.use_offset = true;
        assert!(cfg.validate().is_err());
        let mut cfg = SolverConfig::preset(ConfigName::Pgm);
        cfg.kappa_tau = 1.0;
        assert!(cfg.validate().is_err());
        cfg.kappa_tau = 0.5;
        cfg.kappa_g = 0.0;
        assert!(cfg.validate().is_err());
        cfg.kappa_g = 1.0;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn offset_rows() {
        let rows = build_cut_constraints(&oracle(&[1]), 2.0, 0.1);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].coeffs, vec![0.0, 4.0, 0.0]);
        assert!((rows[0].rhs - 3.9).abs() < 1e-15);
        // tau = 0 at the anchor: equality iff value == ub
        let rows = build_cut_constraints(&oracle(&[1]), 2.0, 0.0);
        assert_eq!(rows[0].activity(&e(1)), rows[0].rhs);
        assert!(build_cut_constraints(&CutOracle::new(), 2.0, 0.1).is_empty());
    }

    #[test]
    fn offset_cap() {
        let mut b = BruteForceBackend::new();
        let dom = FeasibleDomain::new(3, 1).unwrap();
        let cfg = SolverConfig::preset(ConfigName::PgmTau);
        let st = state(&[1], 2.0, -3.0, f64::INFINITY);
        let sel = select_offset(&mut b, &st, &cfg, &dom, Duration::from_secs(5)).unwrap();
        assert_eq!(sel.tau, 0.5);
        assert_eq!(sel.backtracks, 0);
        assert!(sel.increase_offset);
        // x2 <= 0.875
        assert!((sel.rows[0].rhs - 3.5).abs() < 1e-15);
    }

    #[test]
    fn offset_floor_when_incumbent_optimal() {
        let mut b = BruteForceBackend::new();
        let dom = FeasibleDomain::new(3, 1).unwrap();
        let cfg = SolverConfig::preset(ConfigName::PgmTau);
        let st = state(&[0, 1, 2], 1.0, -4.0, 0.5);
        let sel = select_offset(&mut b, &st, &cfg, &dom, Duration::from_secs(5)).unwrap();
        // Offsets within the backend's feasibility tolerance count as satisfiable.
        assert!(sel.tau < 1e-8);
        assert!(!sel.increase_offset);
        assert!(sel.backtracks >= 1);
        assert!(sel.backtracks <= max_offset_backtracks(0.5, cfg.epsilon, cfg.kappa_tau));
    }

    #[test]
    fn lb_condition_examples() {
        let x_lb = e(1);
        let x_next = e(0);
        assert_eq!(lb_cut_inner(&[2.0, 0.0, 0.0], &x_lb, &x_next), -2.0);
        assert!(lb_cut_condition(&[2.0, 0.0, 0.0], &x_lb, &x_next));
        let a = BinaryPoint::parse("10").unwrap();
        let b = BinaryPoint::parse("01").unwrap();
        assert!(!lb_cut_condition(&[2.0, 0.0], &a, &b));
        assert!(!lb_cut_condition(&[-5.0, -5.0, -5.0], &x_lb, &x_lb));
    }

    #[test]
    fn cpm_solves_diagonal() {
        let mut b = BruteForceBackend::new();
        let dom = FeasibleDomain::new(3, 1).unwrap();
        let out = run(&mut b, &diag(), &dom, &e(2), &SolverConfig::preset(ConfigName::Cpm)).unwrap();
        assert_eq!(out.status, SolveStatus::EpsOptimal);
        assert_eq!(out.f_best, 1.0);
        assert_eq!(out.x_best, e(0));
        assert!(out.gap <= 1e-9);
    }

    #[test]
    fn loose_epsilon_stops_at_start() {
        let mut b = BruteForceBackend::new();
        let dom = FeasibleDomain::new(3, 1).unwrap();
        let cfg = SolverConfig {
            epsilon: 10.0,
            ..SolverConfig::preset(ConfigName::Cpm)
        };
        let out = run(&mut b, &diag(), &dom, &e(2), &cfg).unwrap();
        assert_eq!(out.status, SolveStatus::EpsOptimal);
        assert_eq!(out.x_best, e(2));
        assert_eq!(out.f_best, 3.0);
        assert_eq!(out.iterations, 0);
        assert_eq!(out.trace.records[0].lb, -3.0);
    }

    #[test]
    fn infeasible_start_rejected() {
        let mut b = BruteForceBackend::new();
        let dom = FeasibleDomain::new(3, 1).unwrap();
        let x0 = BinaryPoint::parse("110").unwrap();
        let r = run(&mut b, &diag(), &dom, &x0, &SolverConfig::default());
        assert!(matches!(r, Err(Error::Usage(_))));
    }

    #[test]
    fn nonconvex_objective_is_regularized() {
        let mut b = BruteForceBackend::new();
        let q = QuadraticObjective::from_rows(&[
            vec![0.0, -2.0, 1.0],
            vec![-2.0, 0.0, -1.0],
            vec![1.0, -1.0, 0.0],
        ])
        .unwrap();
        let dom = FeasibleDomain::new(3, 2).unwrap();
        for c in ConfigName::ALL {
            let x0 = BinaryPoint::leading_ones(3, 2);
            let out = run(&mut b, &q, &dom, &BinaryPoint::parse("011").unwrap(), &SolverConfig::preset(c))
                .unwrap();
            assert!(out.working_objective.regularization().is_some());
            assert_eq!(out.f_best, -2.0, "{c}");
            assert_eq!(out.x_best, x0);
        }
    }
}
