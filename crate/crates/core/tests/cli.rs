use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn siltkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siltkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_algebra(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = siltkit(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn enumerate_preprojective_a2() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_algebra(dir.path(), "a2pre.alg", &["construct", "preprojective", "--type", "A2"]);
    let out = siltkit(&["silting", "enumerate", "--cutoff", "100", &file, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["node_count"], 6);
    assert_eq!(doc["complete"], true);
    assert_eq!(doc["manifest"]["command"], "silting enumerate");
    assert_eq!(doc["manifest"]["seed"], 0);
}

#[test]
fn check_selfinjective_reports_permutation() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_algebra(dir.path(), "a32.alg", &["construct", "anm", "--n", "3", "--m", "2"]);
    let doc = json(&siltkit(&["algebra", "check-selfinjective", &file, "--json"]));
    assert_eq!(doc["selfinjective"], true);
    assert_eq!(doc["weakly_symmetric"], false);
    // pi(1,0) = (3,0) since r + i - n = -2 = 0 mod 2
    assert_eq!(doc["permutation"][0], "(3,0)");
}

#[test]
fn hasse_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_algebra(
        dir.path(),
        "nak.alg",
        &["construct", "nakayama", "--simples", "2", "--loewy", "3"],
    );
    let dot = dir.path().join("out.dot");
    let out = siltkit(&["silting", "hasse", &file, "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph hasse {"));
    assert!(text.contains("n0 -> "));
}

#[test]
fn verification_certificates() {
    let out = siltkit(&[
        "verify",
        "skew-iso",
        "--n",
        "3",
        "--m",
        "2",
        "--field-prime",
        "5",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["manifest"]["field_modulus"], 5);

    let dir = tempfile::tempdir().unwrap();
    let file = write_algebra(
        dir.path(),
        "nak.alg",
        &["construct", "nakayama", "--simples", "2", "--loewy", "4"],
    );
    let out = siltkit(&["verify", "tilde-iso", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("OK"));
}

#[test]
fn exit_codes() {
    assert_eq!(siltkit(&["silting", "frobnicate"]).status.code(), Some(1));
    assert_eq!(siltkit(&["verify", "skew-iso", "--n", "3"]).status.code(), Some(1));
    assert_eq!(siltkit(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "{\"vertices\": [\"1\"], \"arrows\": [}").unwrap();
    let out = siltkit(&["algebra", "check-selfinjective", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    // a field without primitive 3rd roots of unity
    let out = siltkit(&["verify", "skew-iso", "--n", "3", "--m", "3", "--field-prime", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // A_2 path algebra is not self-injective, so nu-stable enumeration has nothing to work with
    let hereditary = dir.path().join("a2.alg");
    std::fs::write(
        &hereditary,
        r#"{"vertices": ["1","2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]}"#,
    )
    .unwrap();
    let out = siltkit(&["silting", "enumerate", "--nu-stable", hereditary.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn field_prime_overrides_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_algebra(dir.path(), "a2.alg", &["construct", "preprojective", "--type", "A2"]);
    let doc = json(&siltkit(&[
        "algebra",
        "check-selfinjective",
        &file,
        "--field-prime",
        "7",
        "--json",
    ]));
    assert_eq!(doc["manifest"]["field_modulus"], 7);
    assert_eq!(doc["selfinjective"], true);
}
