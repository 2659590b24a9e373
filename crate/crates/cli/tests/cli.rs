//! End-to-end tests of the `lscat` binary: exit codes, determinism, and
//! round-tripping of emitted documents.

use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lscat"))
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const TRIANGLE_BOUNDARY: &str = r#"{"type":"complex","facets":[["a","b"],["b","c"],["a","c"]]}"#;

#[test]
fn exact_results_exit_zero() {
    let out = run(&["scat", &fixture("disk")]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(stdout(&out).trim(), "scat = 1 (exact, mode facet-subsets)");
}

#[test]
fn interval_results_exit_two() {
    // with a one-state budget the optimal cover (which needs a real fence)
    // cannot be certified, leaving an honest interval
    let out = run(&["cat", &fixture("cat1_gcat2"), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("cat in [1, 2]"), "{text}");
}

#[test]
fn parse_errors_exit_one() {
    let out = run_stdin(&["cat", "-"], r#"{"type":"poset","points":["a"],"le":[["a","b"]]}"#);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(!out.stderr.is_empty());
}

#[test]
fn le_cycles_are_rejected_with_the_offending_pair() {
    let out = run_stdin(
        &["cat", "-"],
        r#"{"type":"poset","points":["a","b"],"le":[["a","b"],["b","a"]]}"#,
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('a') && err.contains('b'), "{err}");
}

#[test]
fn json_reports_are_byte_deterministic() {
    for args in [
        vec!["scat", &fixture("disk"), "--json", "--witness"],
        vec!["check-inequalities", &fixture("cat1_gcat2"), "--json"],
        vec!["gcat", &fixture("gcat_drop"), "--json", "--witness"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
    }
}

#[test]
fn seed_flag_never_changes_results() {
    let base = run(&["cat", &fixture("op_asymmetric"), "--json", "--witness"]);
    let seeded = run(&[
        "cat",
        &fixture("op_asymmetric"),
        "--json",
        "--witness",
        "--seed",
        "12345",
    ]);
    assert_eq!(stdout(&base), stdout(&seeded));
}

#[test]
fn emitted_documents_round_trip() {
    // op is an involution: applying it twice restores the order
    let once = run(&["op", &fixture("op_asymmetric")]);
    assert_eq!(once.status.code(), Some(0));
    let twice = run_stdin(&["op", "-"], stdout(&once).trim());
    let original = std::fs::read_to_string(fixture("op_asymmetric")).unwrap();
    let a: serde_json::Value = serde_json::from_str(stdout(&twice).trim()).unwrap();
    let b: serde_json::Value = serde_json::from_str(original.trim()).unwrap();
    assert_eq!(a["points"], b["points"]);
    let pairs = |v: &serde_json::Value| {
        let mut p: Vec<String> = v["le"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        p.sort();
        p
    };
    assert_eq!(pairs(&a), pairs(&b));

    // sd output re-parses and is consumed by another command
    let sd = run_stdin(&["sd", "-"], r#"{"type":"complex","facets":[["a","b"]]}"#);
    assert_eq!(
        stdout(&sd).trim(),
        r#"{"type":"complex","facets":[["{a}","{a,b}"],["{b}","{a,b}"]]}"#
    );
    let collapsible = run_stdin(&["is-strongly-collapsible", "-"], stdout(&sd).trim());
    assert_eq!(stdout(&collapsible).trim(), "true");
}

#[test]
fn functor_commands_compose() {
    // the order complex of the face poset is the barycentric subdivision
    let chi = run(&["chifun", &fixture("disk")]);
    assert_eq!(chi.status.code(), Some(0));
    let k_of_chi = run_stdin(&["kfun", "-"], stdout(&chi).trim());
    let sd = run(&["sd", &fixture("disk")]);
    assert_eq!(stdout(&k_of_chi), stdout(&sd));
}

#[test]
fn quotient_t0_collapses_cycles() {
    let out = run_stdin(
        &["quotient-t0", "-", "--json"],
        r#"{"type":"poset","points":["a","b","c"],"le":[["a","b"],["b","a"],["a","c"]]}"#,
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains(r#""points":["a","c"]"#), "{text}");
    assert!(text.contains(r#"["b","a"]"#), "{text}");
}

#[test]
fn same_type_distinguishes_subdivision() {
    let sd = run_stdin(&["sd", "-"], TRIANGLE_BOUNDARY);
    let dir = std::env::temp_dir().join("lscat-cli-test-sd.json");
    std::fs::write(&dir, stdout(&sd)).unwrap();
    let orig = std::env::temp_dir().join("lscat-cli-test-orig.json");
    std::fs::write(&orig, TRIANGLE_BOUNDARY).unwrap();
    let out = run(&["same-type", orig.to_str().unwrap(), dir.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "false");
    let refl = run(&["same-type", orig.to_str().unwrap(), orig.to_str().unwrap()]);
    assert_eq!(stdout(&refl).trim(), "true");
}

#[test]
fn core_command_reports_removal_steps() {
    let out = run(&["core", &fixture("gcat_drop"), "--json", "--witness"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains(r#""steps":"#), "{text}");
    // the core of this space has 7 points
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 7);
}

#[test]
fn witness_report_carries_certificates() {
    let out = run(&["scat", &fixture("disk"), "--json", "--witness"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    for c in certs {
        assert!(c.get("contiguity_chain").is_some(), "{c}");
    }
}
