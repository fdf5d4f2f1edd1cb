//! Projected gradient descent on the cardinality slice, with a check that
//! the returned point is a fixed point of the projected gradient map.

use std::time::Duration;

use gradcut::local::{is_critical, pgm_solve, PgmParams};
use gradcut::{BinaryPoint, BruteForceBackend, FeasibleDomain, QuadraticObjective};

fn main() -> gradcut::Result<()> {
    let obj = QuadraticObjective::from_rows(&[
        vec![2.0, -1.0, 0.0, 0.0, 0.0, 0.0],
        vec![-1.0, 2.0, -1.0, 0.0, 0.0, 0.0],
        vec![0.0, -1.0, 2.0, -1.0, 0.0, 0.0],
        vec![0.0, 0.0, -1.0, 2.0, -1.0, 0.0],
        vec![0.0, 0.0, 0.0, -1.0, 2.0, -1.0],
        vec![0.0, 0.0, 0.0, 0.0, -1.0, 2.0],
    ])?;
    let dom = FeasibleDomain::new(6, 3)?;
    let x0 = BinaryPoint::parse("100101")?;
    let mut backend = BruteForceBackend::new();

    let res = pgm_solve(&mut backend, &obj, &dom, &[], &x0, &PgmParams::default(), Duration::from_secs(10))?;
    println!("values along the path: {:?}", res.f_history);
    println!("final point {} ({:?}, step {})", res.x_final, res.termination, res.eta);
    let ok = is_critical(&mut backend, &obj, &dom, &[], &res.x_final, res.eta)?;
    println!("criticality certificate: {ok}");
    Ok(())
}
