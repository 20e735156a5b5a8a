//! End-to-end tests of the `saddle` binary: exit codes, file outputs,
//! determinism, and the schedule comparison workflow.

use std::path::Path;
use std::process::{Command, Output};

fn saddle(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saddle"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const TOY_RUN: &str = "\
[problem]
kind = toy

[schedule]
kind = reversed_harmonic

[run]
iters = 300
seed = 3

[init]
kind = random
radius = 5
";

#[test]
fn run_succeeds_and_prints_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "toy.cfg", TOY_RUN);
    let out = saddle(&["run", &cfg], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("f_weighted"));
    assert!(stdout.contains("reference = 5.000000000"));
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(trace.starts_with("k,t_k,f_iter,f_weighted,f_avg_point,subgrad_norm,dist_to_ref\n"));
    assert_eq!(trace.trim_end().lines().count(), 1 + 301);
}

#[test]
fn run_is_reproducible_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "toy.cfg", TOY_RUN);
    assert!(saddle(&["run", &cfg], dir.path()).status.success());
    let first = std::fs::read(dir.path().join("trace.csv")).unwrap();
    assert!(saddle(&["run", &cfg], dir.path()).status.success());
    let second = std::fs::read(dir.path().join("trace.csv")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.cfg", "[problem]\nkind = nope\n");
    let out = saddle(&["run", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid configuration"));
}

#[test]
fn numerical_abort_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "diverge.cfg",
        "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 1\n\n[run]\niters = 200\nseed = 1\n\n[init]\nkind = random\nradius = 5\n",
    );
    let out = saddle(&["run", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-finite"));
}

#[test]
fn missing_file_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = saddle(&["run", "does-not-exist.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn certify_toy_exits_0_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "toy.cfg", TOY_RUN);
    let out = saddle(&["certify", &cfg], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("per_iterate_lemma"));
    assert!(stdout.contains("pass"));
    let report = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.starts_with("check,applicable,worst_violation,k_at_worst,pass,reason\n"));
    assert_eq!(report.trim_end().lines().count(), 1 + 5);
}

#[test]
fn certify_without_reference_reports_inapplicable_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "mk.cfg",
        "[problem]\nkind = markowitz\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 100\n",
    );
    let out = saddle(&["certify", &cfg], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.contains("no reference saddle point"));
}

#[test]
fn compare_reproduces_schedule_study() {
    // constant steps 1, 0.5, 0.1, 0.01 against the decaying schedule on a
    // shared random start
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cmp.cfg",
        "[problem]\nkind = toy\n\n\
         [schedule]\nkind = constant\nalpha = 1\n\n\
         [schedule]\nkind = constant\nalpha = 0.5\n\n\
         [schedule]\nkind = constant\nalpha = 0.1\n\n\
         [schedule]\nkind = constant\nalpha = 0.01\n\n\
         [schedule]\nkind = reversed_harmonic\nhorizon = 200\n\n\
         [run]\niters = 200\nseed = 1\neps = 0.25\n\n\
         [init]\nkind = random\nradius = 2\n",
    );
    let out = saddle(&["compare", &cfg], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.trim_end().lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("constant_1,aborted"));
    for label in [
        "trace_constant_0.1.csv",
        "trace_constant_0.01.csv",
        "trace_reversed_harmonic_200.csv",
    ] {
        assert!(dir.path().join(label).exists(), "{label} missing");
    }
    // the k_eps columns: reversed_harmonic reaches eps on the averaged-point
    // metric no later than any constant except possibly 0.1
    let k_eps_avg =
        |line: &str| -> Option<usize> { line.split(',').nth(7).and_then(|f| f.parse().ok()) };
    let find = |label: &str| {
        lines
            .iter()
            .find(|l| l.starts_with(label))
            .copied()
            .unwrap()
    };
    let rh = k_eps_avg(find("reversed_harmonic_200")).expect("rh reaches eps");
    for constant in ["constant_1,", "constant_0.5,"] {
        let k = k_eps_avg(find(constant));
        assert!(
            k.is_none() || k.unwrap() >= rh,
            "{constant} beat the decaying schedule"
        );
    }
}

#[test]
fn out_seed_iters_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let outdir = dir.path().join("results");
    let cfg = write(dir.path(), "toy.cfg", TOY_RUN);
    let out = saddle(
        &[
            "run",
            &cfg,
            "--iters",
            "50",
            "--seed",
            "9",
            "--out",
            outdir.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let trace = std::fs::read_to_string(outdir.join("trace.csv")).unwrap();
    assert_eq!(trace.trim_end().lines().count(), 1 + 51);
    assert!(!dir.path().join("trace.csv").exists());
}

#[test]
fn file_based_problem_roundtrip() {
    // 1x1 LP: min{-x : x <= 1}, saddle value -1 supplied as reference
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", "1 1\n1\n");
    write(dir.path(), "b.txt", "1 1\n1\n");
    write(dir.path(), "c.txt", "1 1\n-1\n");
    let cfg = write(
        dir.path(),
        "lp.cfg",
        "[problem]\nkind = lp\na = a.txt\nb = b.txt\nc = c.txt\n\n\
         [schedule]\nkind = constant\nalpha = 0.05\n\n\
         [run]\niters = 2000\nreference_value = -1\n\n\
         [init]\nkind = zero\n",
    );
    let out = saddle(&["run", &cfg], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("reference = -1.000000000"));
    // last trace row should be close to the saddle value
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    let last = trace.trim_end().lines().last().unwrap();
    let f_weighted: f64 = last.split(',').nth(3).unwrap().parse().unwrap();
    assert!(
        (f_weighted - (-1.0)).abs() < 0.1,
        "f_weighted = {f_weighted}"
    );
}

#[test]
fn explicit_init_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "init.txt", "2 1\n2\n2\n");
    let cfg = write(
        dir.path(),
        "toy.cfg",
        "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 0.1\n\n\
         [run]\niters = 10\n\n[init]\nkind = file\npath = init.txt\n",
    );
    let out = saddle(&["run", &cfg], dir.path());
    assert!(out.status.success());
    // started at the saddle: every f column is exactly 5
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    for line in trace.trim_end().lines().skip(1) {
        let f_iter: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(f_iter, 5.0);
    }
}
