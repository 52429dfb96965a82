//! End-to-end runs of the `qhsyz` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qhsyz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhsyz")).args(args).env_remove("QHSYZ_CACHE_DIR").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(format!("{name}.poly")).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn analyze_prints_summary() {
    let o = qhsyz(&["analyze", &fixture("qh2_quintic")]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("tau = 10, mu = 11"), "{s}");
    assert!(s.contains("(1 : 0 : 0)  tau 10  mu 11  rank M_f 0  non-QH"), "{s}");
    assert!(s.contains("all singularities QH: no"), "{s}");
}

#[test]
fn json_is_reproducible_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qhsyz(&["analyze", &fixture("msyz2_sextic"), "--json", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["status"], "ok");
    assert_eq!(json["report"]["tau_total"], 16);
    assert_eq!(json["telemetry"]["timing"], serde_json::Value::Null);
    assert_eq!(code(&qhsyz(&["validate", a.to_str().unwrap()])), 0);

    // stdout output is the same document
    let o = qhsyz(&["analyze", &fixture("msyz2_sextic"), "--json", "-"]);
    assert_eq!(stdout(&o), text);

    let tampered = write(dir.path(), "t.json", &text.replacen('{', "{\"extra\": 1,", 1));
    assert_eq!(code(&qhsyz(&["validate", &tampered])), 2);
    let wrong = write(dir.path(), "v.json", &text.replace("\"schema_version\": 1", "\"schema_version\": 2"));
    assert_eq!(code(&qhsyz(&["validate", &wrong])), 2);
}

#[test]
fn stdin_and_field_override() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qhsyz"))
        .args(["analyze", "-", "--field", "Q(i) minpoly t^2+1", "--json", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"ring x0..x2 over Q\n(x0^2+x1^2)^3 - 4*x0^2*x1^2*x2^2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["report"]["points"].as_array().unwrap().len(), 3);
    assert_eq!(json["report"]["residual_points"], 0);
}

#[test]
fn extra_points_over_an_extension() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "pts", "# conjugate points\n(1 : i : 0)\n1 : -i : 0\n");
    let o = qhsyz(&["analyze", &fixture("msyz2_sextic_rational"), "--field", "Q(i) minpoly t^2+1", "--points", &pts]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("(1 : i : 0)"));

    // a point that is not singular is unsuitable input
    let bad = write(dir.path(), "bad", "1 : 1 : 1\n");
    assert_eq!(code(&qhsyz(&["analyze", &fixture("nodal_cubic"), "--points", &bad])), 2);
    // coordinates outside the field
    let outside = write(dir.path(), "outside", "1 : i : 0\n");
    assert_eq!(code(&qhsyz(&["analyze", &fixture("msyz2_sextic_rational"), "--points", &outside])), 2);
}

#[test]
fn precondition_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.poly", "ring x0..x2 over Q\nx0^2 + * x1\n"),
        ("header.poly", "x0^2 + x1^2\n"),
        ("coefficient.poly", "ring x0..x2 over Q(i) minpoly t^2+1\ni*x0^3 + x1^3 + x2^3\n"),
        ("nonisolated.poly", "ring x0..x2 over Q\nx0^2*x1\n"),
        ("inhomogeneous.poly", "ring x0..x2 over Q\nx0^3 + x1^2\n"),
    ];
    for (name, text) in cases {
        let p = write(dir.path(), name, text);
        let o = qhsyz(&["analyze", &p]);
        assert_eq!(code(&o), 2, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(code(&qhsyz(&["analyze", &fixture("nn2"), "--budget-pairs", "3"])), 2);
    assert_eq!(code(&qhsyz(&["analyze", &fixture("p3_8syz"), "--planar"])), 2);
    assert_eq!(code(&qhsyz(&["analyze", &fixture("nodal_cubic"), "--planar", "--no-planar"])), 2);
    assert_eq!(code(&qhsyz(&["analyze", &fixture("nodal_cubic"), "--order", "spiral"])), 2);
    assert_eq!(code(&qhsyz(&["analyze", "/nonexistent.poly"])), 2);
    assert_eq!(code(&qhsyz(&["frobnicate"])), 2);
}

#[test]
fn orders_and_seeds_agree() {
    let base = stdout(&qhsyz(&["analyze", &fixture("msyz1_quintic")]));
    for args in [["--order", "lex"], ["--order", "weighted(1,2,3)"], ["--no-planar", "--seed=0"]] {
        let o = qhsyz(&["analyze", &fixture("msyz1_quintic"), args[0], args[1]]);
        assert_eq!(code(&o), 0);
        let s = stdout(&o);
        // the planar line is the only one that may disappear
        let strip = |t: &str| t.lines().filter(|l| !l.starts_with("[Z_f]")).collect::<Vec<_>>().join("\n");
        assert_eq!(strip(&s), strip(&base), "{args:?}");
    }
    let seeded = qhsyz(&["analyze", &fixture("nodal_cubic"), "--seed", "7", "--json", "-"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&seeded)).unwrap();
    assert_eq!(json["input"]["seed"], 7);
    assert_eq!(json["report"]["tau_total"], 1);
}

#[test]
fn sequential_matches_parallel() {
    let a = qhsyz(&["analyze", &fixture("nn2"), "--json", "-"]);
    let b = qhsyz(&["analyze", &fixture("nn2"), "--json", "-", "--sequential"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corpus_of_fixtures_passes() {
    let o = qhsyz(&["corpus", fixtures().to_str().unwrap(), "--jobs", "4"]);
    let s = stdout(&o);
    assert_eq!(code(&o), 0, "{s}");
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert!(rows.len() >= 12);
    assert!(rows.iter().all(|r| r.ends_with("ok")), "{s}");
    // rows are sorted by name and independent of the thread count
    let seq = qhsyz(&["corpus", fixtures().to_str().unwrap(), "--jobs", "1"]);
    assert_eq!(stdout(&seq), s);
}

#[test]
fn corpus_reports_mismatches_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixtures().join("nodal_cubic.poly"), dir.path().join("a_node.poly")).unwrap();
    write(dir.path(), "b_broken.poly", "ring x0..x2 over Q\nx0^2 +* x1\n");
    let o = qhsyz(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let s = stdout(&o);
    assert!(s.lines().nth(1).unwrap().ends_with("ok"), "{s}");
    assert!(s.lines().nth(2).unwrap().ends_with("FAILED"), "{s}");

    write(dir.path(), "a_node.expect", "tau = 2\nmu = 1\n");
    let o = qhsyz(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    assert!(s.lines().nth(1).unwrap().ends_with("MISMATCH"), "{s}");
    assert!(s.contains("tau: expected 2, got 1"), "{s}");
}

#[test]
fn empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let o = qhsyz(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert_eq!(code(&qhsyz(&["corpus", "/nonexistent-dir"])), 2);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let cold = qhsyz(&["analyze", &fixture("msyz1_quintic"), "--cache-dir", c, "--json", "-"]);
    let info = stdout(&qhsyz(&["cache", "info", "--cache-dir", c]));
    assert!(!info.contains(": 0 bases"), "{info}");
    let warm = qhsyz(&["analyze", &fixture("msyz1_quintic"), "--cache-dir", c, "--json", "-"]);
    assert_eq!(cold.stdout, warm.stdout);
    // a corrupted entry is a miss, not an error
    for e in fs::read_dir(&cache).unwrap() {
        fs::write(e.unwrap().path(), b"QHGB garbage").unwrap();
    }
    let again = qhsyz(&["analyze", &fixture("msyz1_quintic"), "--cache-dir", c, "--json", "-"]);
    assert_eq!(code(&again), 0);
    assert_eq!(again.stdout, cold.stdout);
    assert_eq!(code(&qhsyz(&["cache", "clear", "--cache-dir", c])), 0);
    assert!(stdout(&qhsyz(&["cache", "info", "--cache-dir", c])).contains(": 0 bases, 0 bytes"));
}

#[test]
#[cfg(debug_assertions)]
fn invariant_violation_exits_1_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_qhsyz"))
        .args(["analyze", &fixture("nodal_cubic"), "--json", json.to_str().unwrap()])
        .env("QHSYZ_INJECT_VIOLATION", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invariant violation: injected violation"));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["status"], "invariant_violation");
    assert_eq!(doc["violations"][0], "injected violation");
    assert_eq!(doc["report"]["tau_total"], 1);
    assert_eq!(code(&qhsyz(&["validate", json.to_str().unwrap()])), 0);
}
