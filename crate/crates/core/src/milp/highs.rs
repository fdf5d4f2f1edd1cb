use std::time::{Duration, Instant};

use highs::{HighsModelStatus, HighsSolutionStatus, RowProblem, Sense};

use super::{MilpBackend, MilpModel, MilpResult, MilpStatusKind};
use crate::model::{BinaryPoint, RowSense};

/// Adapter to the HiGHS MILP solver.
///
/// Relative and absolute MIP gaps are set to zero so that reported optima
/// are exact up to HiGHS' feasibility tolerances; all other options keep
/// their defaults. Solutions are rounded to binary and their objective is
/// recomputed in exact arithmetic.
#[derive(Debug, Default)]
pub struct HighsBackend {
    threads: Option<i32>,
}

impl HighsBackend {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_threads(threads: i32) -> Self {
        HighsBackend {
            threads: Some(threads),
        }
    }
}

impl MilpBackend for HighsBackend {
    fn name(&self) -> &str {
        "highs"
    }

    fn solve(&mut self, model: &MilpModel, budget: Duration) -> MilpResult {
        let start = Instant::now();
        let mut pb = RowProblem::default();
        let cols: Vec<_> = model
            .cost
            .iter()
            .map(|&c| pb.add_integer_column(c, 0.0..=1.0))
            .collect();
        let theta = model
            .has_theta()
            .then(|| pb.add_column(1.0, f64::NEG_INFINITY..f64::INFINITY));

        if let Some(m) = model.cardinality {
            let m = m as f64;
            let terms: Vec<_> = cols.iter().map(|&c| (c, 1.0)).collect();
            pb.add_row(m..=m, terms);
        }
        for row in &model.rows {
            let terms: Vec<_> = cols
                .iter()
                .zip(&row.coeffs)
                .filter(|(_, &a)| a != 0.0)
                .map(|(&c, &a)| (c, a))
                .collect();
            match row.sense {
                RowSense::Le => pb.add_row(..=row.rhs, terms),
                RowSense::Ge => pb.add_row(row.rhs.., terms),
                RowSense::Eq => pb.add_row(row.rhs..=row.rhs, terms),
            }
        }
        if let Some(theta) = theta {
            // theta - <grad, x> >= intercept
            for cut in &model.theta_cuts {
                let mut terms: Vec<_> = cols
                    .iter()
                    .zip(&cut.grad)
                    .filter(|(_, &g)| g != 0.0)
                    .map(|(&c, &g)| (c, -g))
                    .collect();
                terms.push((theta, 1.0));
                pb.add_row(cut.intercept.., terms);
            }
        }

        let mut solver = pb.optimise(Sense::Minimise);
        solver.make_quiet();
        let mut options_ok = solver
            .try_set_option("time_limit", budget.as_secs_f64().max(1e-3))
            .is_ok();
        options_ok &= solver.try_set_option("mip_rel_gap", 0.0).is_ok();
        options_ok &= solver.try_set_option("mip_abs_gap", 0.0).is_ok();
        if let Some(t) = self.threads {
            options_ok &= solver.try_set_option("threads", t).is_ok();
        }
        if !options_ok {
            return MilpResult::without_point(
                MilpStatusKind::Error,
                "HiGHS rejected an option",
                start.elapsed().as_secs_f64(),
            );
        }
        let solved = match solver.try_solve() {
            Ok(s) => s,
            Err(status) => {
                return MilpResult::without_point(
                    MilpStatusKind::Error,
                    format!("HiGHS run failed: {status:?}"),
                    start.elapsed().as_secs_f64(),
                )
            }
        };
        let elapsed = start.elapsed().as_secs_f64();
        let point = || {
            let sol = solved.get_solution();
            BinaryPoint::round(&sol.columns()[..model.n])
        };
        match solved.status() {
            HighsModelStatus::Optimal => {
                MilpResult::with_point(MilpStatusKind::Optimal, model, point(), elapsed)
            }
            HighsModelStatus::Infeasible | HighsModelStatus::UnboundedOrInfeasible => {
                MilpResult::without_point(MilpStatusKind::Infeasible, "infeasible", elapsed)
            }
            HighsModelStatus::ReachedTimeLimit => {
                if solved.primal_solution_status() == HighsSolutionStatus::Feasible {
                    MilpResult::with_point(MilpStatusKind::TimeLimit, model, point(), elapsed)
                } else {
                    MilpResult::without_point(MilpStatusKind::TimeLimit, "no incumbent", elapsed)
                }
            }
            other => MilpResult::without_point(
                MilpStatusKind::Error,
                format!("HiGHS status {other:?}"),
                elapsed,
            ),
        }
    }
}
