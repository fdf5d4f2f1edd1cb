use std::path::Path;
use std::process::{Command, Output};

use gradcut::bench::instance::{synth_instance, write_canonical_json, SynthKind};
use gradcut::bench::sweep::Manifest;

const E1: &str = r#"{"name": "e1", "n": 3, "m": 1, "q": [2, 0, 0, 0, 4, 0, 0, 0, 6]}"#;

fn gradcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradcut"))
        .args(args)
        .env("GRADCUT_BACKEND", "brute")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_e1_with_cpm() {
    let dir = tempfile::tempdir().unwrap();
    let e1 = write(dir.path(), "e1.json", E1);
    let trace = dir.path().join("t.csv");
    let o = gradcut(&["solve", &e1, "--config", "cpm", "--out", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().any(|l| l == "f_best=1"));
    assert!(stdout(&o).contains("status=eps_optimal"));
    let csv = std::fs::read_to_string(trace).unwrap();
    assert!(csv.starts_with("k,t,ub,lb,n_cuts,tau\n"));
}

#[test]
fn solve_with_large_epsilon_stops_at_first_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let e1 = write(dir.path(), "e1.json", E1);
    let o = gradcut(&["solve", &e1, "--config", "pgm", "--epsilon", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("iterations=0"));
}

#[test]
fn solve_reports_limits_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let e1 = write(dir.path(), "e1.json", E1);
    let o = gradcut(&["solve", &e1, "--time-limit", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("status=time_limit"));

    assert_eq!(gradcut(&["solve", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(gradcut(&["solve", &e1, "--config", "bogus"]).status.code(), Some(1));
    assert_eq!(gradcut(&["solve", &e1, "--x0", "11"]).status.code(), Some(1));
    assert_eq!(gradcut(&["solve", &e1, "--x0", "001"]).status.code(), Some(0));
}

#[test]
fn solve_triplet_with_cardinality_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.txt", "3\n1 2 5.0\n1 3 2.0\n2 3 1.0\n");
    let o = gradcut(&["solve", &path, "--cardinality", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "f_best=-5"));
    // no cardinality anywhere
    assert_eq!(gradcut(&["solve", &path]).status.code(), Some(1));
}

#[test]
fn solve_agrees_with_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..4 {
        let inst = synth_instance(10, 3, SynthKind::NonconvexRandom, seed).unwrap();
        let path = dir.path().join(format!("{seed}.json"));
        write_canonical_json(&inst, &path).unwrap();
        let mut f_star = f64::INFINITY;
        for idx in 0..(1u32 << 10) {
            if idx.count_ones() != 3 {
                continue;
            }
            let bits = (0..10).map(|i| ((idx >> i) & 1) as u8).collect();
            let x = gradcut::BinaryPoint::from_bits(bits).unwrap();
            f_star = f_star.min(inst.obj.value(&x).unwrap());
        }
        let o = gradcut(&["solve", path.to_str().unwrap(), "--config", "pgm-tau-lb"]);
        assert_eq!(o.status.code(), Some(0));
        let line = stdout(&o).lines().find(|l| l.starts_with("f_best=")).unwrap().to_string();
        let f: f64 = line["f_best=".len()..].parse().unwrap();
        assert!((f - f_star).abs() <= 1e-9);
    }
}

#[test]
fn bench_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", E1);
    let b = dir.path().join("b.json");
    write_canonical_json(&synth_instance(8, 2, SynthKind::MdpLike, 1).unwrap(), &b).unwrap();
    let out = dir.path().join("run");
    let o = gradcut(&[
        "bench",
        &a,
        b.to_str().unwrap(),
        "/no/such/instance.txt",
        "--out",
        out.to_str().unwrap(),
        "--synthetic",
        "1",
        "--synth-n",
        "9",
        "--synth-m",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = Manifest::load(&out).unwrap();
    assert_eq!(manifest.cells.len(), 20);
    assert_eq!(manifest.cells.iter().filter(|c| c.failed()).count(), 5);
    let csvs = std::fs::read_dir(&out)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "csv"))
        .count();
    assert_eq!(csvs, 15);

    let o = gradcut(&["report", out.to_str().unwrap(), "--budget", "0", "--budget-kind", "iterations"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [
        "profile_iterations.csv",
        "profile_iterations.svg",
        "profile_runtime.csv",
        "profile_runtime.svg",
        "distribution_iterations_0.csv",
        "distribution_iterations_0.svg",
    ] {
        assert!(out.join(f).exists(), "{f}");
    }
    let dist = std::fs::read_to_string(out.join("distribution_iterations_0.csv")).unwrap();
    // At budget zero every run sits at residue one, except on `a` where the
    // default start is already optimal: one third of the mass at zero.
    for config in ["cpm", "pgm", "pgm-tau", "pgm-lb", "pgm-tau-lb"] {
        let rows: Vec<&str> = dist.lines().filter(|l| l.starts_with(&format!("{config},"))).collect();
        assert_eq!(rows.len(), 2, "{config}: {rows:?}");
        assert!(rows[0].starts_with(&format!("{config},0,0.333")));
        assert_eq!(rows[1], format!("{config},1,1"));
    }
}

#[test]
fn bench_fails_when_every_cell_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = gradcut(&["bench", "/no/such/a.txt", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_documents_exit_codes() {
    let o = gradcut(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Exit codes"));
}
