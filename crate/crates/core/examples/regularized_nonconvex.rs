//! A nonconvex objective is shifted onto the cardinality slice before cuts
//! are built; values are reported in the original scale.

use gradcut::{BinaryPoint, BruteForceBackend, ConfigName, FeasibleDomain, QuadraticObjective, SolverConfig};

fn main() -> gradcut::Result<()> {
    let obj = QuadraticObjective::from_rows(&[
        vec![0.0, -3.0, 1.0, 2.0],
        vec![-3.0, 1.0, 0.5, -1.0],
        vec![1.0, 0.5, -2.0, 0.0],
        vec![2.0, -1.0, 0.0, 0.5],
    ])?;
    let dom = FeasibleDomain::new(4, 2)?;
    println!("PSD: {}  Gershgorin rho: {}", obj.is_psd(), obj.gershgorin_rho());
    let reg = obj.regularized(&dom)?;
    println!("regularized PSD: {}  constant shift: {}", reg.is_psd(), reg.shift());

    let mut backend = BruteForceBackend::new();
    let x0 = BinaryPoint::leading_ones(4, 2);
    let out = gradcut::run(&mut backend, &obj, &dom, &x0, &SolverConfig::preset(ConfigName::PgmLb))?;
    println!("x_best {}  f_best {}  (working scale {})", out.x_best, out.f_best, out.working_objective.value(&out.x_best)?);
    Ok(())
}
