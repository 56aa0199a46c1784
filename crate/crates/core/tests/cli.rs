use std::path::PathBuf;
use std::process::{Command, Output};

use crnkit::cli::{parse_network_str, render_json, serialize_network};
use crnkit::random::{random_network, random_weakly_reversible, SampleSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const UNIT: [&str; 12] = [
    "--rate", "k12=1", "--rate", "k21=1", "--rate", "k23=1", "--rate", "k31=1", "--rate", "k45=1",
    "--rate", "k54=1",
];

fn network(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "networks", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_crnkit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

#[test]
fn analyze_reports_deficiencies() {
    let (code, out, _) = run(&["analyze", &network("running.crn")]);
    assert_eq!(code, 0);
    assert!(out.contains("deficiency: 0\n"));
    assert!(out.contains("kinetic deficiency: 0\n"));
    assert!(out.contains("K1 = k21*k31 + k23*k31"));
}

#[test]
fn equilibria_at_unit_rates() {
    let file = network("running.crn");
    let mut args = vec!["equilibria", file.as_str()];
    args.extend(UNIT);
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.contains("kappa (numeric) = (1/2, 1, 1)"));
    assert!(out.contains("existence: always"));
    assert!(out.contains("x* verified: true"));
    assert!(out.contains("(k12/(k21 + k23), k23/k31, k45/k54)"));
}

#[test]
fn symbolic_equilibria_without_rates() {
    let (code, out, _) = run(&["equilibria", &network("running.crn")]);
    assert_eq!(code, 0);
    assert!(!out.contains("kappa (numeric)"));
    assert!(!out.contains("verified"));
}

#[test]
fn empty_equilibrium_set_is_a_negative_verdict() {
    let f = network("deficiency_one.crn");
    let base = ["equilibria", f.as_str(), "--rate", "k12=2", "--rate", "k21=1", "--rate", "k34=4"];
    let (code, out, _) = run(&[&base[..], &["--rate", "k43=1"]].concat());
    assert_eq!(code, 1);
    assert!(out.contains("kappa^C = (1/2) -> fails"));
    let (code, out, _) = run(&[&base[..], &["--rate", "k43=2"]].concat());
    assert_eq!(code, 0);
    assert!(out.contains("x* verified: true"));
}

#[test]
fn multistationarity() {
    let (code, out, _) = run(&["multistat", &network("running.crn")]);
    assert_eq!(code, 0);
    assert!(out.contains("capacity: false"));
    let (code, out, _) = run(&["multistat", &network("multistat.crn")]);
    assert_eq!(code, 0);
    assert!(out.contains("capacity: true") && out.contains("witness: (+,-,+,+)"));
}

#[test]
fn signs_report() {
    let (code, out, _) = run(&["signs", &network("binding.crn")]);
    assert_eq!(code, 0);
    assert!(out.contains("hypotheses: hold"));
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = run(&["solve", &network("running.crn"), "--x0", "1,1,1,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--rate"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.crn");
    std::fs::write(&path, "species A\nvertex 1 stoich: 1 A kinetic: 1 A\nedge 1 -> 1 k11\n").unwrap();
    let (code, _, err) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3") && err.contains("self-loop"));

    let (code, _, err) = run(&["equilibria", &network("binding.crn"), "--rate", "k99=1"]);
    assert_eq!(code, 2);
    assert!(err.contains("k99"));

    let (code, _, _) = run(&["analyze", "/nonexistent/file.crn"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn solve_simulate_realize() {
    let file = network("running.crn");
    let mut args = vec!["solve", file.as_str(), "--x0", "1,1,1,1"];
    args.extend(UNIT);
    let (code, out, _) = run(&args);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("converged: true"));

    let mut args = vec!["simulate", file.as_str(), "--x0", "1,1,1,1", "--t-end", "2", "--dt", "1/100"];
    args.extend(UNIT);
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.contains("steps: 200"));

    let (code, out, _) = run(&["realize", &file, "--gamma", "2,1/3,5"]);
    assert_eq!(code, 0);
    assert!(out.contains("kappa reproduced: true"));
}

#[test]
fn json_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = network("running.crn");
    let mut cases: Vec<Vec<&str>> = vec![
        vec!["analyze", &file],
        vec!["signs", &file],
        vec!["multistat", &file],
        vec!["realize", &file, "--gamma", "1,2,3"],
    ];
    let mut eq = vec!["equilibria", file.as_str()];
    eq.extend(UNIT);
    cases.push(eq);
    let mut solve = vec!["solve", file.as_str(), "--x0", "1,2,1,1", "--seed", "9"];
    solve.extend(UNIT);
    cases.push(solve);
    for (i, case) in cases.iter().enumerate() {
        let path = dir.path().join(format!("r{i}.json"));
        let path_s = path.to_str().unwrap().to_string();
        let args: Vec<&str> = case.iter().copied().chain(["--json", &path_s, "--quiet"]).collect();
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render_json(&value), text, "{case:?}");
        assert_eq!(value["command"], Value::String(case[0].to_string()));
        // same input, same bytes
        run(&args);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn network_files_round_trip(seed in any::<u64>(), reversible in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = SampleSpec::default();
        let net = if reversible {
            random_weakly_reversible(&mut rng, &spec)
        } else {
            random_network(&mut rng, &spec)
        };
        let text = serialize_network(&net);
        let back = parse_network_str(&text).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(serialize_network(&back), text);
    }
}
