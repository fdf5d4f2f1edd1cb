//! Discrete local solvers over `dom ∩ rows`: the projected gradient method
//! and a trust-region variant, both posing their subproblems through a
//! [`MilpBackend`].

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milp::{self, remaining, MilpBackend, MilpStatusKind, TrustNorm};
use crate::model::{BinaryPoint, FeasibleDomain, LinearRow, QuadraticObjective, FEAS_TOL};

/// Absolute tolerance (scaled by `max(1, |score|)`) when comparing linear
/// subproblem scores.
pub const SCORE_TOL: f64 = 1e-9;

/// Sufficient-decrease test used to accept a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecreaseTest {
    /// `f+ <= f - alpha * ||x+ - x||^2 / (2 gamma)`
    #[serde(rename = "eq5")]
    StepLength,
    /// `f+ <= f - alpha * <grad, x - x+>`
    #[serde(rename = "eq6")]
    GradientProduct,
    /// Either of the two.
    #[serde(rename = "either")]
    Either,
}

impl std::str::FromStr for DecreaseTest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq5" => Ok(DecreaseTest::StepLength),
            "eq6" => Ok(DecreaseTest::GradientProduct),
            "either" => Ok(DecreaseTest::Either),
            other => Err(Error::Usage(format!("unknown decrease test {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PgmParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma0: f64,
    pub decrease_test: DecreaseTest,
    pub max_iters: usize,
    pub max_backtracks: usize,
}

impl Default for PgmParams {
    fn default() -> Self {
        PgmParams {
            alpha: 1e-3,
            beta: 0.5,
            gamma0: 1.0,
            decrease_test: DecreaseTest::GradientProduct,
            max_iters: 10_000,
            max_backtracks: 60,
        }
    }
}

impl PgmParams {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !open_unit(self.alpha) || !open_unit(self.beta) {
            return Err(Error::Usage(format!(
                "alpha and beta must lie in (0,1), got alpha={}, beta={}",
                self.alpha, self.beta
            )));
        }
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return Err(Error::Usage(format!("gamma0 must be positive, got {}", self.gamma0)));
        }
        Ok(())
    }
}

/// Trust-region settings. Shares `alpha`, the decrease test and the caps
/// with [`PgmParams`]; `shrink` plays the role of `beta` on the radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrustRegionParams {
    pub norm: TrustNorm,
    pub delta0: f64,
    pub shrink: f64,
    pub alpha: f64,
    pub decrease_test: DecreaseTest,
    pub max_iters: usize,
    pub max_backtracks: usize,
}

impl Default for TrustRegionParams {
    fn default() -> Self {
        TrustRegionParams {
            norm: TrustNorm::L1,
            delta0: 4.0,
            shrink: 0.5,
            alpha: 1e-3,
            decrease_test: DecreaseTest::GradientProduct,
            max_iters: 10_000,
            max_backtracks: 60,
        }
    }
}

impl TrustRegionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta0 > 0.0) {
            return Err(Error::Usage(format!("delta0 must be positive, got {}", self.delta0)));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) || !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Usage("shrink and alpha must lie in (0,1)".into()));
        }
        Ok(())
    }
}

/// Why a local solve stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// The iterate is a fixed point of the projected gradient map for the
    /// returned step size.
    Critical,
    /// No point within the smallest tried radius improves the linear model.
    TrustRegionStationary,
    IterLimit,
    BacktrackLimit,
    TimeLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalResult {
    pub x_final: BinaryPoint,
    pub f_final: f64,
    /// Number of accepted steps.
    pub iters: usize,
    pub termination: Termination,
    /// Step size (PGM) or radius (trust region) in force at termination.
    pub eta: f64,
    /// Objective along the accepted iterates, starting with `f(x0)`.
    pub f_history: Vec<f64>,
    /// MILP subproblems solved.
    pub subproblems: usize,
}

impl LocalResult {
    pub fn critical(&self) -> bool {
        self.termination == Termination::Critical
    }
}

/// Evaluates the configured sufficient-decrease test for a step
/// `x_j -> x_j1` taken with step size `gamma`.
#[allow(clippy::too_many_arguments)]
pub fn sufficient_decrease(
    f_j: f64,
    f_j1: f64,
    x_j: &BinaryPoint,
    x_j1: &BinaryPoint,
    grad_j: &[f64],
    gamma: f64,
    alpha: f64,
    test: DecreaseTest,
) -> bool {
    let step_length = || {
        let sq = x_j.hamming(x_j1) as f64;
        f_j1 <= f_j - alpha * sq / (2.0 * gamma)
    };
    let gradient_product = || {
        let inner = x_j.dot(grad_j) - x_j1.dot(grad_j);
        f_j1 <= f_j - alpha * inner
    };
    match test {
        DecreaseTest::StepLength => step_length(),
        DecreaseTest::GradientProduct => gradient_product(),
        DecreaseTest::Either => step_length() || gradient_product(),
    }
}

fn scores_match(own: f64, best: f64) -> bool {
    own <= best + SCORE_TOL * best.abs().max(1.0)
}

fn check_start(dom: &FeasibleDomain, rows: &[LinearRow], x0: &BinaryPoint) -> Result<()> {
    if !dom.contains(x0) || !rows.iter().all(|r| r.is_satisfied(x0, FEAS_TOL)) {
        return Err(Error::Usage(format!(
            "local solver start {x0} is not in the constraint set"
        )));
    }
    Ok(())
}

/// Whether `x` attains the minimum of `<1 - 2z, .>` at
/// `z = x - eta * grad f(x)` over `dom ∩ rows`, i.e. `x` belongs to the
/// projection of `z`.
pub fn is_critical<B: MilpBackend + ?Sized>(
    backend: &mut B,
    obj: &QuadraticObjective,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    x: &BinaryPoint,
    eta: f64,
) -> Result<bool> {
    if !(eta > 0.0) {
        return Err(Error::Usage(format!("eta must be positive, got {eta}")));
    }
    check_start(dom, rows, x)?;
    let g = obj.gradient(x)?;
    let z: Vec<f64> = x.to_f64().iter().zip(&g).map(|(xi, gi)| xi - eta * gi).collect();
    let res = milp::project(backend, &z, dom, rows, Duration::from_secs(3600))?;
    let best = res
        .objective
        .ok_or_else(|| Error::Backend(format!("projection failed: {}", res.status.message)))?;
    Ok(scores_match(x.dot(&milp::projection_scores(&z)), best))
}

/// Projected gradient method with backtracking on the step size.
///
/// Stops when the current iterate attains the optimal projection score
/// (robust to a backend returning another point of a tied argmin set).
/// The step size carries over between iterations.
#[allow(clippy::too_many_arguments)]
pub fn pgm_solve<B: MilpBackend + ?Sized>(
    backend: &mut B,
    obj: &QuadraticObjective,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    x0: &BinaryPoint,
    params: &PgmParams,
    budget: Duration,
) -> Result<LocalResult> {
    params.validate()?;
    check_start(dom, rows, x0)?;
    let deadline = Instant::now() + budget;
    let mut x = x0.clone();
    let mut fx = obj.value(&x)?;
    let mut gamma = params.gamma0;
    let mut out = LocalResult {
        x_final: x.clone(),
        f_final: fx,
        iters: 0,
        termination: Termination::IterLimit,
        eta: gamma,
        f_history: vec![fx],
        subproblems: 0,
    };

    while out.iters < params.max_iters {
        let g = obj.gradient(&x)?;
        let xf = x.to_f64();
        let mut backtracks = 0;
        let next = loop {
            let z: Vec<f64> = xf.iter().zip(&g).map(|(xi, gi)| xi - gamma * gi).collect();
            let res = milp::project(backend, &z, dom, rows, remaining(deadline))?;
            out.subproblems += 1;
            let kind = res.kind();
            let (Some(best), Some(y)) = (res.objective, res.x) else {
                if kind == MilpStatusKind::TimeLimit {
                    out.termination = Termination::TimeLimit;
                    out.eta = gamma;
                    return Ok(out);
                }
                return Err(Error::Backend(format!(
                    "projection returned {:?}: {}",
                    res.status.kind, res.status.message
                )));
            };
            if kind == MilpStatusKind::TimeLimit {
                out.termination = Termination::TimeLimit;
                out.eta = gamma;
                return Ok(out);
            }
            if scores_match(x.dot(&milp::projection_scores(&z)), best) {
                out.termination = Termination::Critical;
                out.eta = gamma;
                return Ok(out);
            }
            let fy = obj.value(&y)?;
            if sufficient_decrease(fx, fy, &x, &y, &g, gamma, params.alpha, params.decrease_test) {
                break (y, fy);
            }
            backtracks += 1;
            if backtracks > params.max_backtracks {
                out.termination = Termination::BacktrackLimit;
                out.eta = gamma;
                return Ok(out);
            }
            gamma *= params.beta;
        };
        (x, fx) = next;
        out.iters += 1;
        out.x_final = x.clone();
        out.f_final = fx;
        out.f_history.push(fx);
        out.eta = gamma;
    }
    Ok(out)
}

/// Trust-region local solver: linear model over a polyhedral-norm ball,
/// radius shrunk on a failed decrease test and kept on success. Stops when
/// the subproblem cannot improve the model value of the current iterate.
#[allow(clippy::too_many_arguments)]
pub fn tr_solve<B: MilpBackend + ?Sized>(
    backend: &mut B,
    obj: &QuadraticObjective,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    x0: &BinaryPoint,
    params: &TrustRegionParams,
    budget: Duration,
) -> Result<LocalResult> {
    params.validate()?;
    check_start(dom, rows, x0)?;
    let deadline = Instant::now() + budget;
    let mut x = x0.clone();
    let mut fx = obj.value(&x)?;
    let mut delta = params.delta0;
    let mut out = LocalResult {
        x_final: x.clone(),
        f_final: fx,
        iters: 0,
        termination: Termination::IterLimit,
        eta: delta,
        f_history: vec![fx],
        subproblems: 0,
    };

    while out.iters < params.max_iters {
        let g = obj.gradient(&x)?;
        let own = x.dot(&g);
        let mut backtracks = 0;
        let next = loop {
            let res = milp::solve_tr_subproblem(
                backend,
                &g,
                &x,
                delta,
                params.norm,
                dom,
                rows,
                remaining(deadline),
            )?;
            out.subproblems += 1;
            let kind = res.kind();
            let (Some(best), Some(y), MilpStatusKind::Optimal) = (res.objective, res.x, kind)
            else {
                if kind == MilpStatusKind::TimeLimit {
                    out.termination = Termination::TimeLimit;
                    out.eta = delta;
                    return Ok(out);
                }
                return Err(Error::Backend(format!(
                    "trust-region step returned {:?}: {}",
                    res.status.kind, res.status.message
                )));
            };
            if scores_match(own, best) {
                out.termination = Termination::TrustRegionStationary;
                out.eta = delta;
                return Ok(out);
            }
            let fy = obj.value(&y)?;
            if sufficient_decrease(fx, fy, &x, &y, &g, 1.0, params.alpha, params.decrease_test) {
                break (y, fy);
            }
            backtracks += 1;
            if backtracks > params.max_backtracks {
                out.termination = Termination::BacktrackLimit;
                out.eta = delta;
                return Ok(out);
            }
            delta *= params.shrink;
        };
        (x, fx) = next;
        out.iters += 1;
        out.x_final = x.clone();
        out.f_final = fx;
        out.f_history.push(fx);
        out.eta = delta;
    }
    Ok(out)
}
