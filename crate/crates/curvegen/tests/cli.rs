//! End-to-end tests for the `curvegen` binary: exit codes, JSON
//! determinism, and the oracle/selftest subcommands.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvegen"))
}

fn write_request(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("curvegen-cli-{name}-{}.cg", std::process::id()));
    fs::write(&path, contents).expect("temp file is writable");
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

const DE_JONG_REQUEST: &str = "\
curve genus 2
object E = bundle(r=1,d=0,id=O) + bundle(r=1,d=1,h0=0,id=L)
assume hom(O, L) = 0
analyze E
";

#[test]
fn analyze_text_mode_succeeds() {
    let path = write_request("text", DE_JONG_REQUEST);
    let out = bin().arg("analyze").arg(&path).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("genus 2"), "unexpected output: {text}");
    assert!(text.contains("No"), "expected a No verdict: {text}");
    fs::remove_file(path).ok();
}

#[test]
fn analyze_json_is_deterministic_and_well_formed() {
    let path = write_request("json", DE_JONG_REQUEST);
    let first = bin().arg("analyze").arg(&path).arg("--json").output().unwrap();
    let second = bin().arg("analyze").arg(&path).arg("--json").output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "JSON output must be byte-identical");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["genus"], 2);
    assert_eq!(doc["queries"][0]["query"], "analyze");
    assert_eq!(doc["queries"][0]["classical"]["decision"], "No");
    assert_eq!(doc["queries"][0]["classical"]["rule"], 7);
    assert_eq!(doc["queries"][0]["is_generator"], true);
    fs::remove_file(path).ok();
}

#[test]
fn parse_error_exits_with_code_2() {
    let path = write_request("syntax", "curve genus 2\nobject E = bundle(r=0,d=1)\nanalyze E\n");
    let out = bin().arg("analyze").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    fs::remove_file(path).ok();
}

#[test]
fn analysis_error_exits_with_code_1() {
    // faltings requires a semistable object; a two-slope bundle fails at
    // analysis time, after a clean parse.
    let src = "curve genus 2\nobject E = bundle(r=1,d=0) + bundle(r=1,d=5)\nfaltings E\n";
    let path = write_request("analysis", src);
    let out = bin().arg("analyze").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("faltings"));
    fs::remove_file(path).ok();
}

#[test]
fn missing_file_exits_with_code_1() {
    let out = bin().arg("analyze").arg("/nonexistent/request.cg").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_p1_reports_clean_cross_check() {
    let out = bin().args(["oracle", "p1", "--max-degree", "10"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["euler_cross_check"]["pairs"], 441);
    assert_eq!(doc["euler_cross_check"]["failures"], 0);
    assert_eq!(doc["offset_law_holds"], true);
}

#[test]
fn selftest_passes() {
    let out = bin().arg("selftest").output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "output: {text}");
    assert!(text.lines().count() >= 8);
}
