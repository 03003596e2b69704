//! Runs the `coxfact` binary as a subprocess.

use std::process::Command;

use coxfact_core::character::TableReport;
use coxfact_core::counting::CountSummary;
use coxfact_core::group::GroupInfo;
use coxfact_core::harness::{Status, VerificationReport};
use serde::de::DeserializeOwned;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coxfact"))
        .args(args)
        .env_remove("COXFACT_MAX_ORDER")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Parses a JSON envelope and checks the payload survives a round trip.
fn payload<T: DeserializeOwned + serde::Serialize>(stdout: &str, command: &str) -> T {
    let doc: Value = serde_json::from_str(stdout).expect("valid json");
    assert_eq!(doc["command"], command);
    assert!(doc["version"].is_string());
    assert!(doc["group"].is_string());
    let p: T = serde_json::from_value(doc["payload"].clone()).expect("typed payload");
    assert_eq!(serde_json::to_value(&p).unwrap(), doc["payload"]);
    p
}

#[test]
fn info_a2() {
    let (code, out, _) = run(&["info", "A2", "--format", "json"]);
    assert_eq!(code, 0);
    let info: GroupInfo = payload(&out, "info");
    assert_eq!((info.rank, info.order, info.reflections, info.hyperplanes), (2, 6, 3, 3));
    assert_eq!(info.degrees, vec![2, 3]);
}

#[test]
fn info_st4_and_a1() {
    let (_, out, _) = run(&["info", "ST4", "--format", "json"]);
    let info: GroupInfo = payload(&out, "info");
    assert_eq!((info.reflections, info.hyperplanes), (8, 4));
    assert_eq!(info.degrees, vec![4, 6]);
    let (_, out, _) = run(&["info", "A1", "--format", "json"]);
    let info: GroupInfo = payload(&out, "info");
    assert_eq!((info.order, info.reflections), (2, 1));
}

#[test]
fn info_text_lists_degrees() {
    let (code, out, _) = run(&["info", "G2"]);
    assert_eq!(code, 0);
    assert!(out.contains("degrees         2 6"), "{out}");
}

#[test]
fn table_a2() {
    let (code, out, _) = run(&["table", "A2", "--format", "json"]);
    assert_eq!(code, 0);
    let t: TableReport = payload(&out, "table");
    assert_eq!(t.rows.len(), 3);
    assert_eq!(t.degrees, vec![1, 1, 2]);
}

#[test]
fn table_st4_has_cyclotomic_entries() {
    let (code, out, _) = run(&["table", "ST4"]);
    assert_eq!(code, 0);
    assert!(out.contains("z("), "{out}");
}

#[test]
fn count_all_agrees_on_a3() {
    let (code, out, _) = run(&["count", "A3", "--max-l", "5", "--method", "all", "--format", "json"]);
    assert_eq!(code, 0);
    let s: CountSummary = payload(&out, "count");
    assert_eq!(s.reports.len(), 5);
    assert_eq!(s.agreement, Some(true));
    assert_eq!(s.reports[0].counts[3].to_string(), "16");
}

#[test]
fn counts_are_decimal_strings() {
    let (_, out, _) = run(&["count", "B2", "--max-l", "4", "--method", "egf", "--format", "json"]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let counts = &doc["payload"]["reports"][0]["counts"];
    assert_eq!(counts, &serde_json::json!(["0", "0", "4", "0", "64"]));
}

#[test]
fn count_a1_closed_csv() {
    let (code, out, _) = run(&["count", "A1", "--max-l", "4", "--method", "closed", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "l,closed\n0,0\n1,1\n2,0\n3,1\n4,0\n");
}

#[test]
fn count_divisibility_failure_exits_nonzero() {
    // not well-generated: the closed form leaves a remainder at l = 2
    let (code, out, _) = run(&["count", "G(4,2,2)", "--max-l", "3", "--method", "closed"]);
    assert_eq!(code, 2);
    assert!(out.contains("not divisible"), "{out}");
}

#[test]
fn verify_g2_all_pass() {
    let (code, out, _) = run(&["verify", "G2", "--max-l", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let r: VerificationReport = payload(&out, "verify");
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn verify_a1_text() {
    let (code, out, _) = run(&["verify", "A1"]);
    assert_eq!(code, 0);
    assert!(out.contains("all checks passed"));
}

#[test]
fn verify_with_fault_fails() {
    let (code, out, _) = run(&["verify", "A2", "--inject-fault", "7"]);
    assert_eq!(code, 2);
    assert!(out.contains("FAIL"));
}

#[test]
fn verify_csv_has_one_line_per_check() {
    let (_, out, _) = run(&["verify", "B2", "--format", "csv"]);
    let lines = out.lines().count();
    assert_eq!(lines, 1 + coxfact_core::harness::CHECK_IDS.len());
}

#[test]
fn unknown_group_is_usage_error() {
    let (code, _, err) = run(&["info", "E9"]);
    assert_eq!(code, 1);
    assert!(err.contains("expected one of"), "{err}");
}

#[test]
fn bad_flag_is_usage_error() {
    let (code, _, _) = run(&["count", "A2", "--method", "bogus"]);
    assert_eq!(code, 1);
}

#[test]
fn size_guard_refuses() {
    let (code, _, err) = run(&["info", "B4", "--max-order", "100"]);
    assert_eq!(code, 3);
    assert!(err.contains("too large"));
}

#[test]
fn size_guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxfact"))
        .args(["info", "A4"])
        .env("COXFACT_MAX_ORDER", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = run(&["info", "A2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let _: GroupInfo = payload(&text, "info");
}
