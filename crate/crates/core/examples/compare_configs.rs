//! Runs the five flag combinations on one diversity-style instance.

use std::time::Duration;

use gradcut::bench::instance::{synth_instance, SynthKind};
use gradcut::{BackendKind, BinaryPoint, ConfigName, SolverConfig};

fn main() -> gradcut::Result<()> {
    let inst = synth_instance(24, 5, SynthKind::MdpLike, 7)?;
    let x0 = BinaryPoint::leading_ones(24, 5);
    println!("{}: f(x0) = {:.4}", inst.name, inst.obj.value(&x0)?);
    for config in ConfigName::ALL {
        let cfg = SolverConfig {
            time_limit: Duration::from_secs(5),
            ..SolverConfig::preset(config)
        };
        let mut backend = BackendKind::default_kind().create()?;
        let out = gradcut::run(&mut backend, &inst.obj, &inst.dom, &x0, &cfg)?;
        println!(
            "{:<11} f_best {:>10.4}  iterations {:>4}  cuts {:>4}  LB cuts {:>3}  {:?}",
            config.as_str(),
            out.f_best,
            out.iterations,
            out.oracle.len(),
            out.lb_cuts_added(),
            out.status
        );
    }
    Ok(())
}
