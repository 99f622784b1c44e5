use std::fs;
use std::process::{Command, Output};

fn qcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcm")).args(args).output().expect("run qcm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn fidelity_values() {
    let o = qcm(&["fidelity", "local-bh", "--average"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0.620370");
    assert_eq!(stdout(&qcm(&["fidelity", "nonlocal-bh", "--alpha2", "0.3"])).trim(), "0.700000");
    assert!(stdout(&qcm(&["fidelity", "--machine", "two-pauli-like", "--average"])).starts_with("0.604"));
    assert_eq!(stdout(&qcm(&["fidelity", "universal", "--x", "-0.5"])).trim().len(), 8);
}

#[test]
fn exit_codes() {
    assert_eq!(qcm(&["fidelity", "local-bh", "--alpha2", "1.5"]).status.code(), Some(4));
    assert_eq!(qcm(&["fidelity", "local-bh", "--x", "-2"]).status.code(), Some(4));
    assert_eq!(qcm(&["fidelity", "local-bh"]).status.code(), Some(4));
    assert_eq!(qcm(&["sweep", "--machine", "local-bh", "--family", "pure", "--points", "1"]).status.code(), Some(4));

    let unknown = qcm(&["fidelity", "cloner-9000", "--average"]);
    assert_eq!(unknown.status.code(), Some(3));
    let err = String::from_utf8(unknown.stderr).unwrap();
    for preset in ["local-bh", "universal", "one-pauli-like", "two-pauli-like", "nonlocal-bh"] {
        assert!(err.contains(preset));
    }
    assert_eq!(qcm(&["sweep", "--machine", "nope", "--family", "pure"]).status.code(), Some(3));
    assert_eq!(qcm(&["verify", "--machine", "nope"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.csv");
    let o = qcm(&["sweep", "--machine", "local-bh", "--family", "pure", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(qcm(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_csv_is_stable_and_matches_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &str| {
        vec!["sweep", "--machine", "universal", "--family", "pure", "--out", p]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    for p in [&a, &b] {
        let o = Command::new(env!("CARGO_BIN_EXE_qcm")).args(args(p.to_str().unwrap())).output().unwrap();
        assert!(o.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("parameter,fidelity,concurrence,eof,discord,discord_branch\n"));
    assert_eq!(text.lines().count(), 202);
    let mid = text.lines().nth(101).unwrap();
    assert!(mid.starts_with("0.5,0.5625,0.125,0.036997409,"), "{mid}");

    // Sequential and parallel runs write identical bytes.
    let seq = qcm(&["--sequential", "sweep", "--machine", "universal", "--family", "pure"]);
    assert_eq!(stdout(&seq), text);
}

#[test]
fn local_bh_entanglement_gap() {
    let csv = stdout(&qcm(&["sweep", "--machine", "local-bh", "--family", "pure"]));
    let alpha = column(&csv, "parameter");
    let conc = column(&csv, "concurrence");
    for (a, c) in alpha.iter().zip(&conc) {
        if *a <= 0.109 || *a >= 0.891 {
            assert_eq!(*c, 0.0, "alpha^2 = {a}");
        }
    }
    assert!(conc[100] > 0.16);
}

#[test]
fn nonlocal_werner_discord_column() {
    let csv = stdout(&qcm(&["sweep", "--machine", "nonlocal-bh", "--family", "werner", "--points", "21"]));
    let xs = column(&csv, "parameter");
    let discord = column(&csv, "discord");
    for (x, d) in xs.iter().zip(&discord) {
        let t: f64 = 0.6 * (2.0 * x - 1.0) / 3.0;
        let f = |y: f64| if y > 0.0 { y * y.log2() } else { 0.0 };
        let closed = f(1.0 + t) / 4.0 + f(1.0 - 3.0 * t) / 4.0 - f(1.0 - t) / 2.0;
        assert!((d - closed).abs() < 1e-8, "x = {x}");
    }
}

#[test]
fn verify_suites() {
    let optima = qcm(&["verify", "optima"]);
    assert_eq!(optima.status.code(), Some(0));
    assert!(stdout(&optima).contains("universal-a-squared"));

    let constants = qcm(&["verify", "--suite", "constants"]);
    let report = stdout(&constants);
    assert!(report.contains("local-bh average fidelity 67/108 vs 0.62 (tol 5e-3)"));
    // The two unmatchable printed values fail the suite.
    assert_eq!(constants.status.code(), Some(1));
    assert!(report.contains("FAIL two-pauli-like-entry-0.0337"));
    assert!(report.contains("FAIL one-pauli-like-average-published"));

    let oracles = qcm(&["verify", "oracles", "--machine", "universal"]);
    assert_eq!(oracles.status.code(), Some(0));
    let report = stdout(&oracles);
    assert!(report.contains("FLAG universal-werner-concurrence-literal"));
    assert!(report.contains("PASS universal-bloch-vs-unitary"));
}

#[test]
fn machine_names_accepted_everywhere() {
    let listed = stdout(&qcm(&["list-machines"]));
    for line in listed.lines() {
        let name = line.split_whitespace().next().unwrap();
        assert!(qcm(&["fidelity", name, "--alpha2", "0.5"]).status.success());
        assert!(qcm(&["sweep", "--machine", name, "--family", "werner", "--points", "3"]).status.success());
        assert_ne!(qcm(&["verify", "optima", "--machine", name]).status.code(), Some(3));
    }
}
