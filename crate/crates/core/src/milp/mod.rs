//! MILP backend contract and the subproblem builders used by the outer loop
//! and the local solvers.
//!
//! Every subproblem is expressed as a [`MilpModel`]: binary variables `x`, an
//! optional free epigraph variable `theta` bounded below by affine cuts, a
//! cardinality equality and a list of dense linear rows. Backends only see
//! this model, so the engine never depends on a particular solver.

mod brute;
#[cfg(feature = "highs")]
mod highs;

use std::time::{Duration, Instant};

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BinaryPoint, CutOracle, FeasibleDomain, LinearRow, FEAS_TOL};

pub use brute::BruteForceBackend;
#[cfg(feature = "highs")]
pub use highs::HighsBackend;

/// Affine lower bound `theta >= <grad, x> + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaCut {
    pub grad: Vec<f64>,
    pub intercept: f64,
}

impl ThetaCut {
    pub fn eval(&self, x: &BinaryPoint) -> f64 {
        x.dot(&self.grad) + self.intercept
    }
}

/// `min <cost, x> (+ theta)` over binary `x` subject to the listed rows.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpModel {
    pub n: usize,
    pub cost: Vec<f64>,
    /// When nonempty the model carries a free variable `theta` with unit cost.
    pub theta_cuts: Vec<ThetaCut>,
    pub cardinality: Option<usize>,
    pub rows: Vec<LinearRow>,
}

impl MilpModel {
    /// Domain constraints plus `extra` rows, zero objective.
    pub fn over_domain(dom: &FeasibleDomain, extra: &[LinearRow]) -> Self {
        let mut rows = dom.extra_rows().to_vec();
        rows.extend_from_slice(extra);
        MilpModel {
            n: dom.dim(),
            cost: vec![0.0; dom.dim()],
            theta_cuts: Vec::new(),
            cardinality: Some(dom.cardinality()),
            rows,
        }
    }

    pub fn has_theta(&self) -> bool {
        !self.theta_cuts.is_empty()
    }

    /// Smallest feasible `theta` at `x`.
    pub fn theta_at(&self, x: &BinaryPoint) -> Option<f64> {
        self.has_theta().then(|| {
            self.theta_cuts
                .iter()
                .map(|c| c.eval(x))
                .fold(f64::NEG_INFINITY, f64::max)
        })
    }

    /// Objective at `x` with `theta` at its smallest feasible value.
    pub fn objective_at(&self, x: &BinaryPoint) -> f64 {
        x.dot(&self.cost) + self.theta_at(x).unwrap_or(0.0)
    }

    pub fn is_feasible(&self, x: &BinaryPoint) -> bool {
        x.len() == self.n
            && self.cardinality.is_none_or(|m| x.count_ones() == m)
            && self.rows.iter().all(|r| r.is_satisfied(x, FEAS_TOL))
    }

    fn validate(&self) -> Result<()> {
        if self.cost.len() != self.n {
            return Err(Error::dim("objective", self.n, self.cost.len()));
        }
        for r in &self.rows {
            if r.coeffs.len() != self.n {
                return Err(Error::dim("row", self.n, r.coeffs.len()));
            }
        }
        for c in &self.theta_cuts {
            if c.grad.len() != self.n {
                return Err(Error::dim("cut", self.n, c.grad.len()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MilpStatusKind {
    Optimal,
    Infeasible,
    TimeLimit,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MilpStatus {
    pub kind: MilpStatusKind,
    pub message: String,
}

impl MilpStatus {
    pub fn new(kind: MilpStatusKind, message: impl Into<String>) -> Self {
        MilpStatus {
            kind,
            message: message.into(),
        }
    }
}

/// What a backend returns. `x` is attached for `Optimal`, and for `TimeLimit`
/// when an incumbent exists; `theta` and `objective` are recomputed exactly
/// at the rounded `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpResult {
    pub status: MilpStatus,
    pub x: Option<BinaryPoint>,
    pub theta: Option<f64>,
    pub objective: Option<f64>,
    pub solve_time: f64,
}

impl MilpResult {
    pub fn without_point(kind: MilpStatusKind, message: impl Into<String>, solve_time: f64) -> Self {
        MilpResult {
            status: MilpStatus::new(kind, message),
            x: None,
            theta: None,
            objective: None,
            solve_time,
        }
    }

    pub(crate) fn with_point(
        kind: MilpStatusKind,
        model: &MilpModel,
        x: BinaryPoint,
        solve_time: f64,
    ) -> Self {
        MilpResult {
            status: MilpStatus::new(kind, ""),
            theta: model.theta_at(&x),
            objective: Some(model.objective_at(&x)),
            x: Some(x),
            solve_time,
        }
    }

    pub fn kind(&self) -> MilpStatusKind {
        self.status.kind
    }

    pub fn is_optimal(&self) -> bool {
        self.status.kind == MilpStatusKind::Optimal
    }

    /// Converts a backend `Error` status into a library error.
    pub fn check(self) -> Result<Self> {
        if self.status.kind == MilpStatusKind::Error {
            return Err(Error::Backend(self.status.message));
        }
        Ok(self)
    }
}

/// A MILP solver. One handle serves one solve at a time.
pub trait MilpBackend: Send {
    fn name(&self) -> &str;

    /// Solves `model` within `budget`. Failures are reported through the
    /// status, never by panicking.
    fn solve(&mut self, model: &MilpModel, budget: Duration) -> MilpResult;
}

impl<B: MilpBackend + ?Sized> MilpBackend for Box<B> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn solve(&mut self, model: &MilpModel, budget: Duration) -> MilpResult {
        (**self).solve(model, budget)
    }
}

/// Backends selectable at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Highs,
    Brute,
}

impl BackendKind {
    /// External solver when compiled in, otherwise the enumerator.
    /// `GRADCUT_BACKEND=brute|highs` overrides.
    pub fn default_kind() -> Self {
        match std::env::var("GRADCUT_BACKEND").as_deref() {
            Ok("brute") => BackendKind::Brute,
            Ok("highs") => BackendKind::Highs,
            _ if cfg!(feature = "highs") => BackendKind::Highs,
            _ => BackendKind::Brute,
        }
    }

    pub fn create(self) -> Result<Box<dyn MilpBackend>> {
        match self {
            BackendKind::Brute => Ok(Box::new(BruteForceBackend::new())),
            #[cfg(feature = "highs")]
            BackendKind::Highs => Ok(Box::new(HighsBackend::new())),
            #[cfg(not(feature = "highs"))]
            BackendKind::Highs => Err(Error::Usage(
                "built without the `highs` feature; use the brute-force backend".into(),
            )),
        }
    }
}

impl std::str::FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "highs" => Ok(BackendKind::Highs),
            "brute" | "brute-force" => Ok(BackendKind::Brute),
            other => Err(Error::Usage(format!("unknown backend {other:?}"))),
        }
    }
}

fn run_model<B: MilpBackend + ?Sized>(
    backend: &mut B,
    model: &MilpModel,
    budget: Duration,
) -> Result<MilpResult> {
    model.validate()?;
    if budget.is_zero() {
        return Ok(MilpResult::without_point(
            MilpStatusKind::TimeLimit,
            "no time budget left",
            0.0,
        ));
    }
    backend.solve(model, budget).check()
}

/// Lower-bound problem `min theta` over the domain subject to every cut in
/// the oracle. The oracle must be nonempty so that `theta` is bounded.
pub fn solve_cp_model<B: MilpBackend + ?Sized>(
    backend: &mut B,
    oracle: &CutOracle,
    dom: &FeasibleDomain,
    budget: Duration,
) -> Result<MilpResult> {
    if oracle.is_empty() {
        return Err(Error::Usage(
            "cutting-plane model requires at least one cut".into(),
        ));
    }
    let mut model = MilpModel::over_domain(dom, &[]);
    model.theta_cuts = oracle
        .cuts()
        .iter()
        .map(|c| ThetaCut {
            grad: c.grad().to_vec(),
            intercept: c.intercept(),
        })
        .collect();
    run_model(backend, &model, budget)
}

/// Euclidean projection of `z` onto `dom ∩ rows`, posed as
/// `min <1 - 2z, x>`. The returned objective is that linear score.
pub fn project<B: MilpBackend + ?Sized>(
    backend: &mut B,
    z: &[f64],
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    budget: Duration,
) -> Result<MilpResult> {
    if z.len() != dom.dim() {
        return Err(Error::dim("projection target", dom.dim(), z.len()));
    }
    let mut model = MilpModel::over_domain(dom, rows);
    model.cost = projection_scores(z);
    run_model(backend, &model, budget)
}

/// Linear objective `1 - 2z` whose minimizers over a binary set are exactly
/// the Euclidean projections of `z`.
pub fn projection_scores(z: &[f64]) -> Vec<f64> {
    z.iter().map(|&v| 1.0 - 2.0 * v).collect()
}

/// Any point of `dom ∩ rows`, if one exists.
pub fn find_feasible<B: MilpBackend + ?Sized>(
    backend: &mut B,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    budget: Duration,
) -> Result<MilpResult> {
    run_model(backend, &MilpModel::over_domain(dom, rows), budget)
}

/// Whether `dom ∩ rows` is nonempty. A time-out answers `false`.
pub fn check_nonempty<B: MilpBackend + ?Sized>(
    backend: &mut B,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    budget: Duration,
) -> Result<bool> {
    if rows.is_empty() && dom.extra_rows().is_empty() {
        return Ok(true);
    }
    let res = find_feasible(backend, dom, rows, budget)?;
    match res.kind() {
        MilpStatusKind::Optimal => Ok(true),
        MilpStatusKind::TimeLimit => {
            if res.x.is_some() {
                return Ok(true);
            }
            warn!("feasibility check hit the time limit; treating the set as empty");
            Ok(false)
        }
        _ => Ok(false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrustNorm {
    #[serde(rename = "1")]
    L1,
    #[serde(rename = "inf")]
    LInf,
}

impl std::str::FromStr for TrustNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "l1" => Ok(TrustNorm::L1),
            "inf" | "linf" => Ok(TrustNorm::LInf),
            other => Err(Error::Usage(format!("unknown trust-region norm {other:?}"))),
        }
    }
}

/// Row expressing `||x - center||_p <= radius` on binary `x`.
///
/// The l1 distance to a binary center is linear:
/// `sum (1 - 2c_i) x_i + sum c_i`. An l-infinity ball of radius below one
/// pins `x` to the center (same row with right-hand side zero); otherwise
/// it is vacuous and no row is produced.
pub fn trust_region_row(center: &BinaryPoint, radius: f64, norm: TrustNorm) -> Option<LinearRow> {
    let coeffs: Vec<f64> = center
        .bits()
        .iter()
        .map(|&c| 1.0 - 2.0 * f64::from(c))
        .collect();
    let ones = center.count_ones() as f64;
    match norm {
        TrustNorm::L1 => Some(LinearRow::le(coeffs, radius - ones)),
        TrustNorm::LInf if radius < 1.0 => Some(LinearRow::le(coeffs, -ones)),
        TrustNorm::LInf => None,
    }
}

/// Trust-region step `min <grad, x>` over `dom ∩ rows ∩ ball(center, radius)`.
#[allow(clippy::too_many_arguments)]
pub fn solve_tr_subproblem<B: MilpBackend + ?Sized>(
    backend: &mut B,
    grad: &[f64],
    center: &BinaryPoint,
    radius: f64,
    norm: TrustNorm,
    dom: &FeasibleDomain,
    rows: &[LinearRow],
    budget: Duration,
) -> Result<MilpResult> {
    if grad.len() != dom.dim() {
        return Err(Error::dim("gradient", dom.dim(), grad.len()));
    }
    if center.len() != dom.dim() {
        return Err(Error::dim("trust-region center", dom.dim(), center.len()));
    }
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::Usage(format!("trust-region radius must be >= 0, got {radius}")));
    }
    let mut all_rows = rows.to_vec();
    all_rows.extend(trust_region_row(center, radius, norm));
    let mut model = MilpModel::over_domain(dom, &all_rows);
    model.cost = grad.to_vec();
    run_model(backend, &model, budget)
}

/// Remaining budget until `deadline`, saturating at zero.
pub fn remaining(deadline: Instant) -> Duration {
    deadline.saturating_duration_since(Instant::now())
}
