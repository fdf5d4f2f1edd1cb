//! Residue curves and their statistics across a problem set.
//!
//! The residue of a run at budget `t` is
//! `(f(t) - f*) / (f0 - f*)`, where `f(t)` is the best value found within
//! the budget, `f0` the common starting value and `f*` the best known value.
//! It starts at one and decreases toward zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trace::RunTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    Iterations,
    Runtime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResiduePoint {
    pub budget: f64,
    pub residue: f64,
}

/// Right-continuous step function sampled at the trace records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueSeries {
    pub points: Vec<ResiduePoint>,
    pub budget_kind: BudgetKind,
}

impl ResidueSeries {
    /// Value at `budget`: the last point at or before it, one before the
    /// first point.
    pub fn at(&self, budget: f64) -> f64 {
        let idx = self.points.partition_point(|p| p.budget <= budget);
        if idx == 0 {
            1.0
        } else {
            self.points[idx - 1].residue
        }
    }

    /// Smallest budget at which the residue is at most `target`.
    pub fn budget_to_reach(&self, target: f64) -> Option<f64> {
        self.points.iter().find(|p| p.residue <= target).map(|p| p.budget)
    }

    /// Starts at one, stays in `[0, 1]`, never increases.
    pub fn is_valid(&self) -> bool {
        self.points.first().is_some_and(|p| p.budget == 0.0 && p.residue == 1.0)
            && self.points.iter().all(|p| (0.0..=1.0).contains(&p.residue))
            && self.points.windows(2).all(|w| {
                w[1].residue <= w[0].residue && w[1].budget >= w[0].budget
            })
    }
}

/// Residue curve of one run against the reference value `f_star`.
///
/// If the run started at or below `f_star` the series is identically zero.
/// Values are clamped to `[0, 1]` since `f_star` may be an estimate.
pub fn residue(trace: &RunTrace, f_star: f64, kind: BudgetKind) -> Result<ResidueSeries> {
    if trace.records.is_empty() {
        return Err(Error::Usage("residue of an empty trace".into()));
    }
    let denom = trace.f0 - f_star;
    if !(denom > 0.0) {
        return Ok(ResidueSeries {
            points: vec![ResiduePoint {
                budget: 0.0,
                residue: 0.0,
            }],
            budget_kind: kind,
        });
    }
    let mut points = vec![ResiduePoint {
        budget: 0.0,
        residue: 1.0,
    }];
    let mut current = 1.0f64;
    for rec in &trace.records {
        let budget = match kind {
            BudgetKind::Iterations => rec.k as f64,
            BudgetKind::Runtime => rec.t,
        };
        let r = ((rec.ub - f_star) / denom).clamp(0.0, 1.0);
        current = current.min(r);
        match points.last_mut() {
            Some(last) if last.budget == budget => last.residue = last.residue.min(current),
            _ => points.push(ResiduePoint {
                budget,
                residue: current,
            }),
        }
    }
    // The curve is 1 at budget zero by construction.
    if points[0].budget == 0.0 {
        points[0].residue = 1.0;
    }
    Ok(ResidueSeries {
        points,
        budget_kind: kind,
    })
}

/// Quantile of sorted data by linear interpolation between order
/// statistics (`h = (len - 1) p`).
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    // Equal neighbours (possibly infinite) need no interpolation.
    if sorted[lo] == sorted[hi] {
        return sorted[lo];
    }
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub budget: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

fn values_at(series: &[ResidueSeries], budget: f64) -> Vec<f64> {
    let mut v: Vec<f64> = series.iter().map(|s| s.at(budget)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Median and interquartile band of the residues at each grid budget.
pub fn median_profile(series: &[ResidueSeries], grid: &[f64]) -> Result<Vec<ProfilePoint>> {
    if series.is_empty() {
        return Err(Error::Usage("median profile of no series".into()));
    }
    if grid.is_empty() {
        return Err(Error::Usage("median profile needs a nonempty grid".into()));
    }
    let kind = series[0].budget_kind;
    if series.iter().any(|s| s.budget_kind != kind) {
        return Err(Error::Usage("series mix iteration and runtime budgets".into()));
    }
    Ok(grid
        .iter()
        .map(|&budget| {
            let v = values_at(series, budget);
            ProfilePoint {
                budget,
                median: quantile(&v, 0.5),
                q1: quantile(&v, 0.25),
                q3: quantile(&v, 0.75),
            }
        })
        .collect())
}

/// Empirical CDF of the residues at `budget`: for each distinct residue
/// `r`, the fraction of series with residue `<= r`.
pub fn residue_distribution(series: &[ResidueSeries], budget: f64) -> Result<Vec<(f64, f64)>> {
    if series.is_empty() {
        return Err(Error::Usage("residue distribution of no series".into()));
    }
    if !(budget >= 0.0) {
        return Err(Error::Usage(format!("budget must be >= 0, got {budget}")));
    }
    let v = values_at(series, budget);
    let total = v.len() as f64;
    let mut cdf: Vec<(f64, f64)> = Vec::new();
    for (i, &r) in v.iter().enumerate() {
        let frac = (i + 1) as f64 / total;
        match cdf.last_mut() {
            Some(last) if last.0 == r => last.1 = frac,
            _ => cdf.push((r, frac)),
        }
    }
    Ok(cdf)
}

/// Evenly spaced grid from 0 to `max` with `points` entries.
pub fn linear_grid(max: f64, points: usize) -> Vec<f64> {
    if points < 2 || max <= 0.0 {
        return vec![0.0];
    }
    (0..points)
        .map(|i| max * i as f64 / (points - 1) as f64)
        .collect()
}
