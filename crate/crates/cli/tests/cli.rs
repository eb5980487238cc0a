use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn muub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muub"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn help_exits_zero_everywhere() {
    let nodes: &[&[&str]] = &[
        &[],
        &["builtin"],
        &["builtin", "qubit-family"],
        &["builtin", "qutrit-subspace"],
        &["builtin", "weyl"],
        &["verify-basis"],
        &["verify-muub"],
        &["frame-potential"],
        &["search"],
        &["nonexistence-n3"],
        &["closure"],
        &["mub-states"],
        &["fidelity"],
        &["mapping-table"],
        &["orbit-check"],
        &["qkd"],
        &["reproduce"],
    ];
    for node in nodes {
        let mut args = node.to_vec();
        args.push("--help");
        let out = muub(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
    }
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["frobnicate"],
        vec!["search", "--d", "2"],
        vec!["orbit-check", "--basis", "3", "--index", "0"],
        vec!["closure", "--d", "3", "--set", "(1,0)"],
        vec!["mub-states", "--d", "4"],
        vec!["qkd", "--rounds", "10", "--weights", "0.5,0.5"],
        vec!["search", "--d", "5", "--n", "25"],
        vec!["verify-basis", "/nonexistent/basis.json"],
    ] {
        let out = muub(&args);
        assert_eq!(out.status.code(), Some(64), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn certification_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    // a basis is never unbiased to itself
    fs::write(&a, muub(&["builtin", "qubit-basis", "--index", "0"]).stdout).unwrap();
    let out = muub(&["verify-muub", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "NotUnbiased");

    let out = muub(&["builtin", "qutrit-subspace", "--a", "0", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let mut basis: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    basis["elements"][2]["entries"][0] = serde_json::json!([2.0, 0.0]);
    fs::write(&b, serde_json::to_string(&basis).unwrap()).unwrap();
    let out = muub(&["verify-basis", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "NonUnitary");
}

#[test]
fn qutrit_pair_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let b30 = dir.path().join("b30.json");
    let b31 = dir.path().join("b31.json");
    for (i, p) in [(0, &b30), (1, &b31)] {
        let out = muub(&["builtin", "qutrit-basis", "--index", &i.to_string(), "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let out = muub(&["verify-muub", b30.to_str().unwrap(), b31.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["constant"], 1.0);
}

#[test]
fn verify_basis_round_trip_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = (0..3).map(|k| dir.path().join(format!("{k}.json"))).collect();
    muub(&["builtin", "qutrit-basis", "--index", "5", "--out", files[0].to_str().unwrap()]);
    muub(&["verify-basis", files[0].to_str().unwrap(), "--out", files[1].to_str().unwrap()]);
    muub(&["verify-basis", files[1].to_str().unwrap(), "--out", files[2].to_str().unwrap()]);
    assert_eq!(fs::read(&files[1]).unwrap(), fs::read(&files[2]).unwrap());
}

#[test]
fn search_accepts_seed_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("seed.json");
    fs::write(&seed, muub(&["builtin", "qubit-basis", "--index", "0"]).stdout).unwrap();
    let args = ["search", "--d", "2", "--n", "4", "--seed-file", seed.to_str().unwrap()];
    let first = muub(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, muub(&args).stdout);
    let v = json(&first);
    assert_eq!(v["phase_order"], 4);
    assert_eq!(v["largest_family"], 3);
}

#[test]
fn qkd_dump_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("rounds.jsonl");
    let args = ["qkd", "--rounds", "3000", "--seed", "9", "--eve", "--dump-rounds", dump.to_str().unwrap()];
    let a = muub(&args);
    let b = muub(&args);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = fs::read_to_string(&dump)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3000);
    let sifted = lines.iter().filter(|r| r["sifted"] == true).count() as u64;
    assert_eq!(json(&a)["sifted"].as_u64(), Some(sifted));
    assert!(lines.iter().all(|r| (r["sifted"] == true) == !r["bob_bit"].is_null()));
}

#[test]
fn pinned_eve_on_single_basis_protocol() {
    let out = muub(&["qkd", "--rounds", "4000", "--seed", "2", "--eve", "--weights", "1,0,0", "--eve-basis", "0"]);
    let v = json(&out);
    assert_eq!(v["qber"], 0.0);
    assert_eq!(v["eve_gain"], 1.0);
}

#[test]
fn numbers_have_twelve_significant_digits() {
    let v = json(&muub(&["builtin", "qutrit-family"]));
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        match x {
            Value::Number(n) => {
                let text = n.to_string();
                let digits = text
                    .split(['e', 'E'])
                    .next()
                    .unwrap()
                    .chars()
                    .filter(char::is_ascii_digit)
                    .skip_while(|c| *c == '0')
                    .count();
                assert!(digits <= 12, "{text}");
            }
            Value::Array(a) => stack.extend(a),
            Value::Object(o) => stack.extend(o.into_iter().map(|(_, v)| v)),
            _ => {}
        }
    }
}

#[test]
fn tampered_tolerance_surfaces_failures() {
    let out = muub(&["reproduce", "--eps", "1e-30"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("not unitary"));
}

#[test]
fn mapping_table_reports_formula_mismatches() {
    let v = json(&muub(&["mapping-table"]));
    let table = &v["table"];
    assert_eq!(table[0][0], 0);
    assert!(!v["formula_mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn default_seed_is_reported() {
    let v = json(&muub(&["fidelity", "--trials", "100"]));
    assert_eq!(v["seed"], 1);
    assert_eq!(v["mode"], "monte-carlo");
}
