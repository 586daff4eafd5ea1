use std::path::{Path, PathBuf};
use std::process::Command;

use fkso_cli::{run, RunReport, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK, EXIT_ORACLE_BUDGET, EXIT_VERIFY_FAILED};
use fkso_core::instance::{gen_gap_instance, gen_limit_instance, gen_random_with_levels, load_instance, save_instance};
use fkso_core::Instance;
use tempfile::TempDir;

fn write_instance(dir: &TempDir, name: &str, inst: &Instance) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, save_instance(inst)).unwrap();
    path
}

fn trivial() -> Instance {
    Instance::new(1, 1, 1, 1, vec![1], vec![0.0, 2.0, 2.0, 0.0]).unwrap()
}

fn p(path: &Path) -> String {
    path.display().to_string()
}

fn report(args: &[&str]) -> (i32, RunReport) {
    let out = run(std::iter::once("fkso").chain(args.iter().copied()));
    let parsed: RunReport = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout_str()));
    (out.code, parsed)
}

#[test]
fn solve_trivial_instance() {
    let dir = TempDir::new().unwrap();
    let path = write_instance(&dir, "triv.json", &trivial());
    for alg in ["fks", "ufkso", "fkso"] {
        let (code, rep) = report(&["solve", &p(&path), "--algorithm", alg]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(rep.results[0].served_count, 1);
        assert_eq!(rep.results[0].achieved, 2.0);
        assert_eq!(rep.status, "ok");
    }
}

#[test]
fn gap_instance_small_radii_are_integrally_infeasible() {
    let dir = TempDir::new().unwrap();
    let inst = gen_gap_instance(3, 1000.0).unwrap();
    let path = write_instance(&dir, "gap.json", &inst);
    let (code, rep) = report(&["solve", &p(&path), "--oracle"]);
    assert_eq!(code, EXIT_OK);
    let oracle = rep.oracle.unwrap();
    assert_eq!(oracle.opt_radius, 1000.0);
    for point in &oracle.coverage_curve {
        assert_eq!(point.coverage >= inst.m(), point.radius >= 1000.0);
    }
    assert_eq!(rep.results[0].radius_guess, 1000.0);
    assert!(rep.counters.cuts > 0);

    let (code, rep) = report(&["solve", &p(&path), "--radius", "1"]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert_eq!(rep.status, "radius_too_small");
    assert!(rep.results.is_empty());
}

#[test]
fn uniform_instance_both_solvers_within_three() {
    let dir = TempDir::new().unwrap();
    for seed in 0..4 {
        let inst = gen_random_with_levels(seed, 7, 5, 3, 5, &[2]).unwrap();
        let path = write_instance(&dir, &format!("u{seed}.json"), &inst);
        for alg in ["ufkso", "fkso"] {
            let (code, rep) = report(&["solve", &p(&path), "--algorithm", alg, "--oracle"]);
            assert_eq!(code, EXIT_OK);
            let opt = rep.oracle.as_ref().unwrap().opt_radius;
            assert!(rep.results[0].achieved <= 3.0 * opt + 1e-9);
            assert_eq!(rep.results[0].dilation, rep.results[0].achieved / opt);
        }
    }
}

#[test]
fn ufkso_rejects_mixed_tolerances() {
    let dir = TempDir::new().unwrap();
    let path = write_instance(&dir, "limit.json", &gen_limit_instance(2, 2, 1.0).unwrap());
    let (code, rep) = report(&["solve", &p(&path), "--algorithm", "ufkso"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(rep.status, "invalid");
}

#[test]
fn exact_examples() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (trivial(), 2.0),
        (gen_limit_instance(3, 3, 1.0).unwrap(), 1.0),
        (gen_gap_instance(2, 1000.0).unwrap(), 1000.0),
    ];
    for (i, (inst, expected)) in cases.iter().enumerate() {
        let path = write_instance(&dir, &format!("e{i}.json"), inst);
        let (code, rep) = report(&["exact", &p(&path), "--jobs", "2"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(rep.oracle.unwrap().opt_radius, *expected);
    }
}

#[test]
fn oracle_budget_exit_code() {
    let dir = TempDir::new().unwrap();
    let path = write_instance(&dir, "gap.json", &gen_gap_instance(3, 1000.0).unwrap());
    let (code, rep) = report(&["exact", &p(&path), "--max-subsets", "10"]);
    assert_eq!(code, EXIT_ORACLE_BUDGET);
    assert_eq!(rep.status, "oracle_budget_exceeded");
}

#[test]
fn gen_outputs_load() {
    let out = run(["fkso", "gen", "gap", "--k", "2"]);
    assert_eq!(out.code, EXIT_OK);
    let inst = load_instance(&out.stdout).unwrap();
    assert_eq!(inst, gen_gap_instance(2, 1000.0).unwrap());

    let out = run(["fkso", "gen", "limit", "--t", "4", "--k", "5"]);
    let inst = load_instance(&out.stdout).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(inst.cc(a, b), 2.0 * (a as f64 - b as f64).abs());
            for i in b * 5..(b + 1) * 5 {
                let expected = 2.0 * (a as f64 - b as f64).abs() + 1.0;
                assert_eq!(inst.cf(a, i), expected);
            }
        }
    }

    let args = [
        "fkso", "gen", "random", "--seed", "7", "--n", "8", "--f", "6", "--k", "3", "--m", "5", "--t", "2",
    ];
    assert_eq!(run(args).stdout, run(args).stdout);
    let inst = load_instance(&run(args).stdout).unwrap();
    assert_eq!(inst.t(), 2);
}

#[test]
fn gen_rejects_bad_parameters() {
    let out = run(["fkso", "gen", "limit", "--t", "4", "--k", "2"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = TempDir::new().unwrap();
    let inst = gen_limit_instance(3, 3, 1.0).unwrap();
    let path = write_instance(&dir, "limit.json", &inst);
    let out = run(["fkso", "solve", &p(&path)]);
    assert_eq!(out.code, EXIT_OK);
    let sol_path = dir.path().join("report.json");
    std::fs::write(&sol_path, &out.stdout).unwrap();
    let (code, _) = report(&["verify", &p(&path), &p(&sol_path)]);
    assert_eq!(code, EXIT_OK);

    // the oracle opens F_1 and serves v_1 at radius 1; claim v_2 as well
    let (_, rep) = report(&["exact", &p(&path)]);
    let oracle = rep.oracle.unwrap();
    assert_eq!(oracle.witness_open, vec![0, 1, 2]);
    let tampered = serde_json::json!({ "open": oracle.witness_open, "served": [0, 1], "achieved": 1.0 });
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, tampered.to_string()).unwrap();
    let (code, rep) = report(&["verify", &p(&path), &p(&bad)]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    let err = rep.error.unwrap();
    assert!(err.contains("witness client 1"), "{err}");
}

#[test]
fn verify_accepts_oracle_witness() {
    let dir = TempDir::new().unwrap();
    let inst = gen_random_with_levels(3, 7, 5, 3, 4, &[1, 2]).unwrap();
    let path = write_instance(&dir, "r.json", &inst);
    let (_, rep) = report(&["exact", &p(&path)]);
    let oracle = rep.oracle.unwrap();
    let doc = serde_json::json!({
        "open": oracle.witness_open,
        "served": oracle.witness_served,
        "achieved": oracle.opt_radius,
    });
    let sol = dir.path().join("w.json");
    std::fs::write(&sol, doc.to_string()).unwrap();
    let (code, _) = report(&["verify", &p(&path), &p(&sol)]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn bad_input_is_reported_not_panicked() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, b"{\"n\": 1}").unwrap();
    let (code, rep) = report(&["solve", &p(&path)]);
    assert_eq!(code, EXIT_INVALID);
    assert!(rep.instance_digest.is_none());
    let (code, _) = report(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(code, EXIT_INVALID);
    let (code, rep) = report(&["solve"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(rep.status, "invalid");
}

#[test]
fn reports_are_deterministic_without_timing() {
    let dir = TempDir::new().unwrap();
    let inst = gen_random_with_levels(11, 8, 6, 3, 5, &[1, 3]).unwrap();
    let path = write_instance(&dir, "d.json", &inst);
    let args = ["fkso", "solve", &p(&path), "--oracle", "--jobs", "3"];
    let first = run(args);
    assert_eq!(first.stdout, run(args).stdout);
    assert!(!first.stdout_str().contains("wall_time_ms"));
    let timed = run(["fkso", "solve", &p(&path), "--timing"]);
    assert!(timed.stdout_str().contains("wall_time_ms"));
}

#[test]
fn trace_goes_to_stderr() {
    let dir = TempDir::new().unwrap();
    let path = write_instance(&dir, "gap.json", &gen_gap_instance(2, 1000.0).unwrap());
    let out = run(["fkso", "solve", &p(&path), "--trace", "--strategy", "chain"]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stderr.lines().collect();
    assert!(lines.iter().all(|l| l.split('\t').count() == 7));
    assert!(lines.iter().any(|l| l.ends_with("\tcut")));
    assert!(lines.last().unwrap().ends_with("\tround"));
    serde_json::from_slice::<RunReport>(&out.stdout).unwrap();
}

#[test]
fn bench_reports_no_violations() {
    let out = run([
        "fkso",
        "bench",
        "--instances",
        "3",
        "--n",
        "6",
        "--f",
        "5",
        "--k",
        "3",
        "--m",
        "4",
        "--t",
        "2",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["violations"], 0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let path = write_instance(&dir, "triv.json", &trivial());
    let bin = env!("CARGO_BIN_EXE_fkso");
    let ok = Command::new(bin).args(["solve", &p(&path)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    serde_json::from_slice::<RunReport>(&ok.stdout).unwrap();
    let small = Command::new(bin)
        .args(["solve", &p(&path), "--radius", "1"])
        .output()
        .unwrap();
    assert_eq!(small.status.code(), Some(EXIT_INFEASIBLE));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
}
