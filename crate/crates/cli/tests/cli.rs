use std::path::PathBuf;
use std::process::{Command, Output};

fn stabforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn synth_to(code: &str, gates: &str, name: &str) -> PathBuf {
    let path = scratch(name);
    let o = stabforge(&["synth", code, "--gates", gates, "-o", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn synth_prints_counts() {
    let o = stabforge(&["synth", "eight_qubit", "--gates", "cnot-cz", "-o", scratch("e8.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{H:4, Z:1, CX:15, CZ:12}");
    let o = stabforge(&["synth", "steane", "-o", scratch("steane.json").to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "{H:3, CX:11}");
}

#[test]
fn synth_without_output_prints_json() {
    let o = stabforge(&["synth", "steane"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    assert_eq!(doc["n"], 7);
}

#[test]
fn syndrome_table_has_25_rows() {
    let o = stabforge(&["syndromes", "eight_qubit"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 26);
    let last: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(last[8..], ["00000", "0"]);
    let o = stabforge(&["syndromes", "eight_qubit", "--format", "json"]);
    assert!(stdout(&o).contains("\"decimal\": 31"));
}

#[test]
fn verify_accepts_encoder_and_rejects_deleted_gate() {
    let path = synth_to("eight_qubit", "mixed", "verify.json");
    let o = stabforge(&["verify", "eight_qubit", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("8 logical basis states"));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["gates"].as_array_mut().unwrap().remove(3);
    let broken = scratch("broken.json");
    std::fs::write(&broken, doc.to_string()).unwrap();
    let o = stabforge(&["verify", "eight_qubit", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(stabforge(&["synth", "eight_qubit", "--bogus"]).status.code(), Some(2));
    assert_eq!(stabforge(&["synth", "no_such_code"]).status.code(), Some(2));
    assert_eq!(stabforge(&["export-qasm", "/nonexistent/c.json"]).status.code(), Some(2));
    assert_eq!(stabforge(&["simulate", "eight_qubit", "--error", "Q@3"]).status.code(), Some(2));
}

#[test]
fn simulate_corrects_single_errors() {
    let o = stabforge(&["simulate", "eight_qubit", "--error", "Y@1", "--logical", "101"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("syndrome   10001 (17)"), "{text}");
    assert!(text.contains("restored   true"));
    let o = stabforge(&["simulate", "eight_qubit", "--error", "XXIIIIII"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_dump_lists_sixteen_kets() {
    let o = stabforge(&["simulate", "eight_qubit", "--dump"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let json_end = text.rfind("error ").unwrap();
    let dump: serde_json::Value = serde_json::from_str(&text[..json_end]).unwrap();
    let kets = dump.as_object().unwrap();
    assert_eq!(kets.len(), 16);
    assert!((kets["00010111"][0].as_f64().unwrap() + 0.25).abs() < 1e-10);
    assert!((kets["11111111"][0].as_f64().unwrap() - 0.25).abs() < 1e-10);
}

#[test]
fn export_qasm_writes_openqasm() {
    let path = synth_to("steane", "mixed", "qasm.json");
    let o = stabforge(&["export-qasm", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("OPENQASM 2.0;"));
    assert!(text.contains("qreg q[7];"));
    assert_eq!(text.lines().filter(|l| l.starts_with("cx ")).count(), 11);
}

#[test]
fn optimize_rules_level() {
    let path = synth_to("steane", "mixed", "opt_in.json");
    let out = scratch("opt_out.json");
    let report = scratch("opt_report.json");
    let o = stabforge(&[
        "optimize",
        path.to_str().unwrap(),
        "--level",
        "rules",
        "-o",
        out.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "{H:3, CX:11} -> {H:3, CX:10}");
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["verified"], true);
}

#[test]
fn pipeline_matches_checked_in_circuit() {
    let out = scratch("pipe.json");
    let o = stabforge(&["pipeline", "steane", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let got = std::fs::read_to_string(out).unwrap();
    let want = include_str!("../../core/fixtures/golden/steane.json");
    assert_eq!(got.trim(), want.trim());
}

#[test]
fn rules_are_listed_as_sound() {
    let o = stabforge(&["rules"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.contains(" sound ")));
}

#[test]
fn output_is_deterministic() {
    let a = stabforge(&["synth", "thirteen_qubit", "--gates", "cnot-cz"]);
    let b = stabforge(&["synth", "thirteen_qubit", "--gates", "cnot-cz"]);
    assert_eq!(a.stdout, b.stdout);
    let a = stabforge(&["pipeline", "eight_qubit"]);
    let b = stabforge(&["pipeline", "eight_qubit"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
