use std::time::{Duration, Instant};

use super::{MilpBackend, MilpModel, MilpResult, MilpStatusKind};
use crate::model::BinaryPoint;

/// Largest number of candidate points the enumerator will visit.
const MAX_POINTS: u64 = 50_000_000;

/// Exhaustive enumeration of the binary points of a model.
///
/// With a cardinality constraint only the `C(n, m)` points of the slice are
/// visited (in colexicographic order of the index sets); without one, all
/// `2^n` points. Ties keep the first point found. Serves as the test oracle
/// and as a fallback for small instances.
#[derive(Debug, Default, Clone)]
pub struct BruteForceBackend;

impl BruteForceBackend {
    pub fn new() -> Self {
        BruteForceBackend
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u64::MAX,
        };
    }
    acc
}

/// Next bit pattern with the same popcount (Gosper's hack).
fn next_combination(v: u64) -> u64 {
    let t = v | (v - 1);
    let w = (!t & t.wrapping_add(1)).wrapping_sub(1) >> (v.trailing_zeros() + 1);
    t.wrapping_add(1) | w
}

fn point_from_mask(n: usize, mask: u64) -> BinaryPoint {
    let bits = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
    BinaryPoint::from_bits(bits).expect("mask bits are binary")
}

impl MilpBackend for BruteForceBackend {
    fn name(&self) -> &str {
        "brute-force"
    }

    fn solve(&mut self, model: &MilpModel, budget: Duration) -> MilpResult {
        let start = Instant::now();
        let n = model.n;
        if n >= 64 {
            return MilpResult::without_point(
                MilpStatusKind::Error,
                format!("enumeration over n={n} variables is not supported"),
                0.0,
            );
        }
        let count = match model.cardinality {
            Some(m) if m > n => 0,
            Some(m) if m == 0 || m == n => 1,
            Some(m) => binomial(n as u64, m as u64),
            None => 1u64 << n,
        };
        if count > MAX_POINTS {
            return MilpResult::without_point(
                MilpStatusKind::Error,
                format!("{count} candidate points exceed the enumeration limit"),
                0.0,
            );
        }
        // A constant objective lets us stop at the first feasible point.
        let constant = !model.has_theta() && model.cost.iter().all(|&c| c == 0.0);

        let mut mask: u64 = match model.cardinality {
            Some(m) if m <= n => (1u64 << m) - 1,
            Some(_) => {
                return MilpResult::without_point(MilpStatusKind::Infeasible, "m > n", 0.0);
            }
            None => 0,
        };
        let mut best: Option<(f64, BinaryPoint)> = None;
        for visited in 0..count {
            if visited % 4096 == 4095 && start.elapsed() >= budget {
                let elapsed = start.elapsed().as_secs_f64();
                return match best {
                    Some((_, x)) => {
                        MilpResult::with_point(MilpStatusKind::TimeLimit, model, x, elapsed)
                    }
                    None => MilpResult::without_point(
                        MilpStatusKind::TimeLimit,
                        "time limit before any feasible point",
                        elapsed,
                    ),
                };
            }
            let x = point_from_mask(n, mask);
            if model.is_feasible(&x) {
                let obj = model.objective_at(&x);
                if best.as_ref().is_none_or(|(b, _)| obj < *b) {
                    best = Some((obj, x));
                    if constant {
                        break;
                    }
                }
            }
            if visited + 1 < count {
                mask = match model.cardinality {
                    Some(_) => next_combination(mask),
                    None => mask + 1,
                };
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        match best {
            Some((_, x)) => MilpResult::with_point(MilpStatusKind::Optimal, model, x, elapsed),
            None => MilpResult::without_point(MilpStatusKind::Infeasible, "no feasible point", elapsed),
        }
    }
}
