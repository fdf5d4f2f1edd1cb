//! Reads a distance file in the MDPLIB triplet layout and solves it.
//! Pass a file path to use your own data; an embedded sample is used
//! otherwise.

use std::path::PathBuf;

use gradcut::bench::instance::{parse_instance, parse_instance_str, InstanceFormat};
use gradcut::{BruteForceBackend, ConfigName, SolverConfig};

const SAMPLE: &str = "\
6 3
0 1 4.1
0 2 2.3
0 3 7.7
0 4 1.0
0 5 3.2
1 2 5.5
1 3 2.9
1 4 6.0
1 5 0.8
2 3 3.3
2 4 4.4
2 5 9.1
3 4 2.2
3 5 5.0
4 5 1.7
";

fn main() -> gradcut::Result<()> {
    let inst = match std::env::args().nth(1) {
        Some(path) => parse_instance(&PathBuf::from(path), InstanceFormat::MdplibTriplet, None)?,
        None => parse_instance_str(SAMPLE, InstanceFormat::MdplibTriplet, "sample", None)?,
    };
    let mut backend = BruteForceBackend::new();
    let x0 = inst.default_start(&mut backend)?;
    let out = gradcut::run(&mut backend, &inst.obj, &inst.dom, &x0, &SolverConfig::preset(ConfigName::PgmTau))?;
    // Objective is the negated pairwise distance sum.
    println!("{}: n={} m={}", inst.name, inst.dom.dim(), inst.dom.cardinality());
    println!("selected {:?}, diversity {}", out.x_best.support().collect::<Vec<_>>(), -out.f_best);
    Ok(())
}
