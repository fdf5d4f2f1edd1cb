mod common;

use std::time::Duration;

use common::{brute_min, random_point, random_psd, random_symmetric};
use gradcut::engine::{self, ConfigName, LocalSolverKind, SolveStatus, SolverConfig};
use gradcut::milp::{BruteForceBackend, MilpBackend, MilpModel, ThetaCut};
use gradcut::{BinaryPoint, FeasibleDomain, QuadraticObjective};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Textbook Kelley loop: solve the cut model, stop on a small gap, add a cut
/// at the model solution. Returns the sequence of model solutions.
fn kelley(
    backend: &mut dyn MilpBackend,
    obj: &QuadraticObjective,
    dom: &FeasibleDomain,
    x0: &BinaryPoint,
    eps: f64,
) -> (Vec<BinaryPoint>, f64) {
    let cut = |a: &BinaryPoint| {
        let g = obj.gradient(a).unwrap();
        let intercept = obj.value(a).unwrap() - a.dot(&g);
        ThetaCut { grad: g, intercept }
    };
    let mut anchors = vec![x0.clone()];
    let mut ub = obj.value(x0).unwrap();
    let mut seq = Vec::new();
    loop {
        let mut model = MilpModel::over_domain(dom, &[]);
        model.theta_cuts = anchors.iter().map(cut).collect();
        let res = backend.solve(&model, Duration::from_secs(60));
        let x = res.x.unwrap();
        let lb = res.theta.unwrap();
        if ub - lb <= eps {
            return (seq, ub);
        }
        ub = ub.min(obj.value(&x).unwrap());
        seq.push(x.clone());
        if anchors.contains(&x) {
            return (seq, ub);
        }
        anchors.push(x);
    }
}

#[test]
fn cpm_matches_direct_kelley_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(4..=9);
        let m = rng.gen_range(1..n);
        let obj = random_psd(&mut rng, n);
        let dom = FeasibleDomain::new(n, m).unwrap();
        let x0 = random_point(&mut rng, n, m);
        let mut b = BruteForceBackend::new();
        let (seq, ub) = kelley(&mut b, &obj, &dom, &x0, 1e-9);
        let out = engine::run(&mut b, &obj, &dom, &x0, &SolverConfig::preset(ConfigName::Cpm)).unwrap();
        let engine_seq: Vec<BinaryPoint> = out.log.iter().map(|l| l.x_lb.clone()).collect();
        assert_eq!(engine_seq, seq);
        assert_eq!(out.f_best, ub);
        let anchors: Vec<&BinaryPoint> = out.oracle.cuts().iter().map(|c| c.anchor()).collect();
        assert_eq!(anchors[0], &x0);
        assert_eq!(&anchors[1..], seq.iter().collect::<Vec<_>>().as_slice());
    }
}

#[test]
fn table_one_flags() {
    assert_eq!(ConfigName::Cpm.flags(), (false, false, false));
    assert_eq!(ConfigName::Pgm.flags(), (true, false, false));
    assert_eq!(ConfigName::PgmTau.flags(), (true, true, false));
    assert_eq!(ConfigName::PgmLb.flags(), (true, false, true));
    assert_eq!(ConfigName::PgmTauLb.flags(), (true, true, true));
    for c in ConfigName::ALL {
        assert_eq!(c.as_str().parse::<ConfigName>().unwrap(), c);
        assert_eq!(SolverConfig::preset(c).name(), Some(c));
    }
}

#[test]
fn bounds_are_monotone_and_sandwich_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..30 {
        let n = rng.gen_range(5..=10);
        let m = rng.gen_range(1..n);
        let obj = if i % 2 == 0 { random_psd(&mut rng, n) } else { random_symmetric(&mut rng, n) };
        let dom = FeasibleDomain::new(n, m).unwrap();
        let (f_star, _) = brute_min(&obj, &dom);
        let x0 = random_point(&mut rng, n, m);
        for c in ConfigName::ALL {
            let mut b = BruteForceBackend::new();
            let out = engine::run(&mut b, &obj, &dom, &x0, &SolverConfig::preset(c)).unwrap();
            assert_eq!(out.status, SolveStatus::EpsOptimal, "{c}");
            assert!((out.f_best - f_star).abs() <= 1e-9, "{c}: {} vs {f_star}", out.f_best);
            assert!(out.trace.is_well_formed());
            for w in out.trace.records.windows(2) {
                assert!(w[1].lb >= w[0].lb);
            }
            for r in &out.trace.records {
                assert!(r.lb <= f_star + 1e-9 && f_star <= r.ub + 1e-9);
            }
        }
    }
}

#[test]
fn trust_region_local_solver_reaches_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let n = rng.gen_range(5..=10);
        let m = rng.gen_range(1..n);
        let obj = random_psd(&mut rng, n);
        let dom = FeasibleDomain::new(n, m).unwrap();
        let (f_star, _) = brute_min(&obj, &dom);
        let x0 = BinaryPoint::leading_ones(n, m);
        for c in [ConfigName::Pgm, ConfigName::PgmTauLb] {
            let cfg = SolverConfig {
                local_solver: LocalSolverKind::TrustRegion,
                ..SolverConfig::preset(c)
            };
            let mut b = BruteForceBackend::new();
            let out = engine::run(&mut b, &obj, &dom, &x0, &cfg).unwrap();
            assert!((out.f_best - f_star).abs() <= 1e-9);
        }
    }
}

#[test]
fn time_limit_is_reported() {
    let inst = gradcut::bench::instance::synth_instance(12, 4, gradcut::bench::instance::SynthKind::MdpLike, 3)
        .unwrap();
    let cfg = SolverConfig {
        time_limit: Duration::ZERO,
        ..SolverConfig::preset(ConfigName::Cpm)
    };
    let mut b = BruteForceBackend::new();
    let x0 = BinaryPoint::leading_ones(12, 4);
    let out = engine::run(&mut b, &inst.obj, &inst.dom, &x0, &cfg).unwrap();
    assert_eq!(out.status, SolveStatus::TimeLimit);
    assert!((out.f_best - inst.obj.value(&x0).unwrap()).abs() <= 1e-9);
    assert_eq!(out.trace.records.len(), 1);
}

#[test]
fn extra_rows_are_respected() {
    // x0 + x1 <= 1 on top of the cardinality constraint.
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let n = 7;
        let obj = random_psd(&mut rng, n);
        let row = gradcut::LinearRow::le(vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1.0);
        let dom = FeasibleDomain::new(n, 3).unwrap().with_rows(vec![row]).unwrap();
        let (f_star, _) = brute_min(&obj, &dom);
        let x0 = BinaryPoint::parse("1011000").unwrap();
        for c in ConfigName::ALL {
            let mut b = BruteForceBackend::new();
            let out = engine::run(&mut b, &obj, &dom, &x0, &SolverConfig::preset(c)).unwrap();
            assert!(dom.contains(&out.x_best));
            assert!((out.f_best - f_star).abs() <= 1e-9);
        }
    }
}

#[cfg(feature = "highs")]
mod highs_backend {
    use super::*;
    use gradcut::milp::{self, HighsBackend};
    use gradcut::model::{Cut, CutOracle};

    #[test]
    fn agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let n = rng.gen_range(4..=10);
            let m = rng.gen_range(1..n);
            let obj = random_psd(&mut rng, n);
            let dom = FeasibleDomain::new(n, m).unwrap();
            let mut oracle = CutOracle::new();
            for _ in 0..rng.gen_range(1..5) {
                oracle.add(Cut::new(&obj, random_point(&mut rng, n, m)).unwrap());
            }
            let budget = Duration::from_secs(30);
            let mut h = HighsBackend::new();
            let mut b = BruteForceBackend::new();
            let th = milp::solve_cp_model(&mut h, &oracle, &dom, budget).unwrap();
            let tb = milp::solve_cp_model(&mut b, &oracle, &dom, budget).unwrap();
            assert!((th.theta.unwrap() - tb.theta.unwrap()).abs() <= 1e-7);

            let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..2.0)).collect();
            let ph = milp::project(&mut h, &z, &dom, &[], budget).unwrap();
            let pb = milp::project(&mut b, &z, &dom, &[], budget).unwrap();
            assert!((ph.objective.unwrap() - pb.objective.unwrap()).abs() <= 1e-9);

            let (f_star, _) = brute_min(&obj, &dom);
            let x0 = random_point(&mut rng, n, m);
            for c in ConfigName::ALL {
                let out = engine::run(&mut h, &obj, &dom, &x0, &SolverConfig::preset(c)).unwrap();
                assert!((out.f_best - f_star).abs() <= 1e-9, "{c}");
            }
        }
    }

    #[test]
    fn reports_infeasible_models() {
        let dom = FeasibleDomain::new(4, 2).unwrap();
        let row = gradcut::LinearRow::le(vec![1.0; 4], 1.0);
        let mut h = HighsBackend::new();
        assert!(!milp::check_nonempty(&mut h, &dom, &[row], Duration::from_secs(10)).unwrap());
    }
}
