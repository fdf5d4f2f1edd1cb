//! Minimize a small convex quadratic over points with exactly two ones.

use gradcut::{BackendKind, BinaryPoint, ConfigName, FeasibleDomain, QuadraticObjective, SolverConfig};

fn main() -> gradcut::Result<()> {
    let obj = QuadraticObjective::from_rows(&[
        vec![4.0, 1.0, 0.5, 0.0, 0.2],
        vec![1.0, 3.0, 0.0, 0.7, 0.0],
        vec![0.5, 0.0, 2.0, 0.3, 0.1],
        vec![0.0, 0.7, 0.3, 5.0, 0.4],
        vec![0.2, 0.0, 0.1, 0.4, 1.5],
    ])?;
    let dom = FeasibleDomain::new(5, 2)?;
    let x0 = BinaryPoint::leading_ones(5, 2);
    let mut backend = BackendKind::default_kind().create()?;

    let out = gradcut::run(&mut backend, &obj, &dom, &x0, &SolverConfig::preset(ConfigName::PgmTauLb))?;
    println!("backend    {}", backend.name());
    println!("x_best     {}", out.x_best);
    println!("f_best     {}", out.f_best);
    println!("status     {:?} after {} iterations, {} cuts", out.status, out.iterations, out.oracle.len());
    Ok(())
}
