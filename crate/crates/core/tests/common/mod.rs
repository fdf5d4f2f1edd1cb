//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use gradcut::{BinaryPoint, FeasibleDomain, QuadraticObjective};
use rand::Rng;

/// All points of `{0,1}^n` with exactly `m` ones, lexicographic by support.
pub fn combinations(n: usize, m: usize) -> Vec<BinaryPoint> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<BinaryPoint>) {
        if left == 0 {
            out.push(BinaryPoint::from_indices(n, cur).unwrap());
            return;
        }
        for i in start..=(n - left) {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Plain double loop `1/2 sum_ij q_ij x_i x_j`.
pub fn naive_value(obj: &QuadraticObjective, x: &BinaryPoint) -> f64 {
    let n = obj.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if x.get(i) && x.get(j) {
                s += obj.entry(i, j);
            }
        }
    }
    0.5 * s
}

/// Minimum over every feasible point of the domain.
pub fn brute_min(obj: &QuadraticObjective, dom: &FeasibleDomain) -> (f64, BinaryPoint) {
    combinations(dom.dim(), dom.cardinality())
        .into_iter()
        .filter(|x| dom.contains(x))
        .map(|x| (naive_value(obj, &x), x))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("domain has a feasible point")
}

/// `B^T B / k` with `B` a uniform `k x n` matrix.
pub fn random_psd<R: Rng>(rng: &mut R, n: usize) -> QuadraticObjective {
    let k = rng.gen_range(1..=n + 2);
    let b: Vec<f64> = (0..k * n).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            q[i * n + j] = (0..k).map(|r| b[r * n + i] * b[r * n + j]).sum::<f64>() / k as f64;
        }
    }
    QuadraticObjective::new(n, q).unwrap()
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> QuadraticObjective {
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-1.0..1.0);
            q[i * n + j] = v;
            q[j * n + i] = v;
        }
    }
    QuadraticObjective::new(n, q).unwrap()
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize, m: usize) -> BinaryPoint {
    let idx = rand::seq::index::sample(rng, n, m).into_vec();
    BinaryPoint::from_indices(n, &idx).unwrap()
}
