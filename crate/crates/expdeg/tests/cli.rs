//! End-to-end checks of the command-line surface and its exit-code
//! contract: 0 on success, 1 on a domain-level "false", 2 on bad input.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_expdeg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn expdeg");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn check_unbroken_pair_exit_codes() {
    let out = run(&["check-unbroken"], r#"{"n": 2, "A": [1, 2], "B": [3]}"#);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("true"));

    let out = run(&["check-unbroken"], r#"{"n": 2, "A": [1, 3], "B": [2]}"#);
    assert_eq!(code(&out), 1);

    // Malformed input (index out of range) is an input error, not "false".
    let out = run(&["check-unbroken"], r#"{"n": 1, "A": [1], "B": [5]}"#);
    assert_eq!(code(&out), 2);

    // Unknown fields are rejected.
    let out = run(
        &["check-unbroken"],
        r#"{"n": 1, "A": [1], "B": [2], "x": 0}"#,
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn check_unbroken_subdivision_input() {
    let out = run(
        &["check-unbroken"],
        r#"{"h": 3, "cuts1": {"1": 1, "2": 1}, "cuts2": {"1": 1}}"#,
    );
    assert_eq!(code(&out), 0);
    let out = run(
        &["check-unbroken"],
        r#"{"h": 3, "cuts1": {"2": 1}, "cuts2": {"2": 1}}"#,
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn fibre_dump_round_trips_through_render() {
    let stratum = r#"{"pair": {"n": 2, "A": [1, 2], "B": [3]}, "J": [1, 2, 3], "g": [1, 1, 1]}"#;
    let out = run(&["fibre"], stratum);
    assert_eq!(code(&out), 0);
    let dump = String::from_utf8(out.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&dump).unwrap();
    assert_eq!(parsed["bubbles"].as_array().unwrap().len(), 6);

    let out = run(&["render"], &dump);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("<svg"));

    let out = run(&["render", "--dot"], &dump);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("graph"));
}

#[test]
fn iso_and_equiv_verbs() {
    let both = r#"{
        "first": {"pair": {"n": 2, "A": [1, 2], "B": [2, 3]}, "J": [2], "g": [0, 1, 0]},
        "second": {"pair": {"n": 2, "A": [1], "B": [2, 3]}, "J": [1], "g": [1, 0, 0]}
    }"#;
    assert_eq!(code(&run(&["iso"], both)), 0);
    let out = run(&["equiv"], both);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("chain"));

    let different = r#"{
        "first": {"pair": {"n": 2, "A": [1, 2], "B": [3]}, "J": [1, 2], "g": [1, 1, 0]},
        "second": {"pair": {"n": 2, "A": [1], "B": [2, 3]}, "J": [2, 3], "g": [0, 1, 1]}
    }"#;
    assert_eq!(code(&run(&["iso"], different)), 1);
    assert_eq!(code(&run(&["equiv"], different)), 1);
}

#[test]
fn limits_and_unique_limit_verbs() {
    let cfg = r#"{"h": 2, "vertices": [[1, 1, 0]]}"#;
    let out = run(&["limits", "--filter", "lw"], cfg);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["pairs"].as_array().unwrap().len(), 3);

    let out = run(
        &[
            "unique-limit",
            "--condition",
            "ct-canonical",
            "--filter",
            "sws",
        ],
        cfg,
    );
    assert_eq!(code(&out), 0);

    let out = run(&["unique-limit", "--condition", "no-such"], cfg);
    assert_eq!(code(&out), 2);
}

#[test]
fn audit_verb_exit_codes() {
    let out = run(
        &[
            "audit",
            "--condition",
            "ct-canonical",
            "--max-h",
            "2",
            "--max-m",
            "2",
        ],
        "",
    );
    assert_eq!(code(&out), 0, "{out:?}");

    let out = run(
        &[
            "audit",
            "--condition",
            "one-pure1-two-pure2",
            "--max-h",
            "3",
            "--max-m",
            "2",
            "--text",
        ],
        "",
    );
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("tropically compatible: NO"));
}

#[test]
fn smoothings_verb() {
    let problem = r#"{
        "subdivision": {"h": 6, "cuts1": {"2": 2, "4": 1}, "cuts2": {"2": 1}},
        "v0": [2, 2, 2]
    }"#;
    let out = run(&["smoothings"], problem);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let targets = parsed["targets"].as_array().unwrap();
    assert_eq!(targets.len(), 1);
    assert_eq!(targets[0]["at"], serde_json::json!([3, 2, 1]));
}

#[test]
fn manifest_is_emitted_on_request() {
    let out = run(
        &["check-unbroken", "--emit-manifest", "--seed", "7"],
        r#"{"n": 1, "A": [1], "B": [2]}"#,
    );
    assert_eq!(code(&out), 0);
    let manifest: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("manifest on stderr");
    assert_eq!(manifest["command"], "check-unbroken");
    assert_eq!(manifest["seed"], 7);
}
