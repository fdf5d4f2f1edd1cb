//! Uses the trust-region local solver inside the cutting-plane loop.

use gradcut::bench::instance::{synth_instance, SynthKind};
use gradcut::engine::LocalSolverKind;
use gradcut::local::TrustRegionParams;
use gradcut::milp::TrustNorm;
use gradcut::{BinaryPoint, BruteForceBackend, ConfigName, SolverConfig};

fn main() -> gradcut::Result<()> {
    let inst = synth_instance(12, 4, SynthKind::PsdRandom, 3)?;
    let x0 = BinaryPoint::leading_ones(12, 4);
    for norm in [TrustNorm::L1, TrustNorm::LInf] {
        let cfg = SolverConfig {
            local_solver: LocalSolverKind::TrustRegion,
            trust_region: TrustRegionParams {
                norm,
                ..TrustRegionParams::default()
            },
            ..SolverConfig::preset(ConfigName::PgmTau)
        };
        let mut backend = BruteForceBackend::new();
        let out = gradcut::run(&mut backend, &inst.obj, &inst.dom, &x0, &cfg)?;
        println!(
            "{norm:?}: f_best {:.6} at {} in {} iterations ({:?})",
            out.f_best, out.x_best, out.iterations, out.status
        );
    }
    Ok(())
}
