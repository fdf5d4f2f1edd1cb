//! Benchmarks two configurations on a few instances and prints their median
//! residue profile over iterations.

use std::time::Duration;

use gradcut::bench::instance::{synth_instance, SynthKind};
use gradcut::bench::residue::{linear_grid, median_profile, residue, BudgetKind};
use gradcut::{BinaryPoint, BruteForceBackend, ConfigName, SolverConfig};

fn main() -> gradcut::Result<()> {
    let configs = [ConfigName::Cpm, ConfigName::PgmTauLb];
    let mut traces = vec![Vec::new(); configs.len()];
    for seed in 0..6 {
        let inst = synth_instance(14, 4, SynthKind::MdpLike, seed)?;
        let x0 = BinaryPoint::leading_ones(14, 4);
        for (slot, &config) in traces.iter_mut().zip(&configs) {
            let cfg = SolverConfig {
                time_limit: Duration::from_secs(30),
                ..SolverConfig::preset(config)
            };
            let mut backend = BruteForceBackend::new();
            slot.push(gradcut::run(&mut backend, &inst.obj, &inst.dom, &x0, &cfg)?.trace);
        }
    }
    // Reference value per instance: the best value any configuration found.
    let f_star: Vec<f64> = (0..traces[0].len())
        .map(|i| traces.iter().map(|t| t[i].best_value()).fold(f64::INFINITY, f64::min))
        .collect();
    let grid = linear_grid(20.0, 11);
    for (config, runs) in configs.iter().zip(&traces) {
        let series = runs
            .iter()
            .zip(&f_star)
            .map(|(t, &f)| residue(t, f, BudgetKind::Iterations))
            .collect::<gradcut::Result<Vec<_>>>()?;
        println!("{config}");
        for p in median_profile(&series, &grid)? {
            println!("  k={:>4}  median {:.3e}  iqr [{:.3e}, {:.3e}]", p.budget, p.median, p.q1, p.q3);
        }
    }
    Ok(())
}
