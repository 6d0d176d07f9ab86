use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn octonion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octonion")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = octonion(args);
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().expect("exit code"), value)
}

fn statuses(v: &Value) -> Vec<String> {
    v["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .map(|c| c["status"].as_str().expect("status").to_string())
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("octonion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn count_sphere_csv() {
    let out = octonion(&["count-sphere", "--q", "2,3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,sphere_count,orbit_count,expected,match");
    assert_eq!(lines[1], "2,120,,120,true");
    assert_eq!(lines[2], "3,2160,,2160,true");
}

#[test]
fn count_sphere_json_at_q4_and_q5() {
    let (code, v) = report(&["count-sphere", "--q", "4,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"][0]["sphere_count"], 64 * 255);
    assert_eq!(v["data"][1]["sphere_count"], 78000);
}

#[test]
fn verify_identities_is_deterministic() {
    let args = ["verify-identities", "--ring", "F3", "--samples", "50", "--seed", "7"];
    let (a, b) = (octonion(&args), octonion(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(statuses(&v).iter().all(|s| s == "pass"));
    let other = octonion(&["verify-identities", "--ring", "F3", "--samples", "50", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn cayley_dickson_identities() {
    let (code, v) = report(&["verify-identities", "--algebra", "cd(Q,-1,-1,-1)", "--samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["algebra"], "cd(Q,-1,-1,-1)");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(octonion(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(octonion(&["isotope", "--ring", "Q"]).status.code(), Some(2));
    let bad_ring = octonion(&["verify-identities", "--ring", "F6"]);
    assert_eq!(bad_ring.status.code(), Some(2));
    assert!(String::from_utf8(bad_ring.stderr).unwrap().starts_with("error:"));
}

#[test]
fn isotope_report() {
    let (code, v) = report(&[
        "isotope", "--ring", "F5", "--a", "2,3,0,0,0,0,0,0", "--b", "1,1,1,0,0,0,0,0",
    ]);
    assert_eq!(code, 0, "{v}");
    assert!(statuses(&v).iter().all(|s| s == "pass"));
    assert_eq!(v["data"]["lambda"], "1");
}

#[test]
fn isotope_norm_scales_for_invertible_pairs() {
    let (code, v) = report(&[
        "isotope", "--ring", "Q", "--a", "2,1,0,0,0,0,0,0", "--b", "3,1,0,0,0,0,0,0", "--check", "norm",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["data"]["lambda"], "6");
}

#[test]
fn spin_triple_round_trip_through_files() {
    let (code, spin) = report(&[
        "spin", "--ring", "Q", "--from-vectors", "1,1,1,0,0,0,0,0", "2,1/2,0,0,0,0,0,0",
    ]);
    assert_eq!(code, 0, "{spin}");
    let path = scratch("spin.json");
    std::fs::write(&path, spin.to_string()).unwrap();
    let p = path.to_str().unwrap();

    let (code, checked) = report(&["triple", "--ring", "Q", "--check", p]);
    assert_eq!(code, 0, "{checked}");
    assert!(statuses(&checked).iter().all(|s| s == "pass"));

    let (code, pi) = report(&["triple", "--ring", "Q", "--pi", p]);
    assert_eq!(code, 0);
    assert_eq!(pi["data"]["pi"], checked["data"]["pi"]);

    let (code, u) = report(&["spin", "--ring", "Q", "--check", p]);
    assert_eq!(code, 0, "{u}");
}

#[test]
fn unrelated_triple_fails() {
    let id: Vec<Vec<&str>> = (0..8).map(|i| (0..8).map(|j| if i == j { "1" } else { "0" }).collect()).collect();
    let mut neg = id.clone();
    neg[0][0] = "2";
    let path = scratch("bad.json");
    std::fs::write(&path, serde_json::json!({ "t1": id, "t2": id, "t3": neg }).to_string()).unwrap();
    let (code, v) = report(&["triple", "--ring", "Q", "--check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(statuses(&v)[0], "fail");
}

#[test]
fn trivialize_and_rebuild_the_triple() {
    let (code, w) = report(&["trivialize", "--ring", "F3", "--a", "2,2,1,0,0,0,0,0"]);
    assert_eq!(code, 0, "{w}");
    let path = scratch("witness.json");
    std::fs::write(&path, w.to_string()).unwrap();
    let (code, t) = report(&[
        "triple", "--ring", "F3", "--from-iso", path.to_str().unwrap(), "--a", "2,2,1,0,0,0,0,0", "--b",
        "2,2,2,0,0,0,0,0",
    ]);
    assert_eq!(code, 0, "{t}");
    assert!(statuses(&t).iter().all(|s| s == "pass"));
}

#[test]
fn trivialize_rejects_non_unit_norm() {
    assert_eq!(octonion(&["trivialize", "--ring", "F3", "--a", "1,2,1,0,0,0,0,0"]).status.code(), Some(2));
}

#[test]
fn orbit_at_q2_with_witness() {
    let (code, v) = report(&[
        "orbit", "--q", "2", "--target", "1,1,1,0,0,0,0,0;0,0,1,0,0,1,0,0", "--emit-witness",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["data"]["orbit_count"], 14400);
    assert!(v["data"]["witness"]["map"].is_array());
}

#[test]
fn orbit_ceiling_is_enforced() {
    assert_eq!(octonion(&["orbit", "--q", "2", "--max-pairs", "100"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("count.json");
    let out = octonion(&["count-sphere", "--q", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"][0]["sphere_count"], 120);
}

#[test]
fn paper_suite_subset() {
    let (code, v) = report(&[
        "paper-suite", "--ring", "F3", "--criterion", "2,4,6,9", "--pairs", "5", "--trials", "50", "--samples", "20",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    assert_eq!(v["data"].as_array().unwrap().len(), 4);
}

#[test]
fn paper_suite_over_f2() {
    let (code, v) = report(&["paper-suite", "--ring", "F2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert!(statuses(&v).iter().all(|s| s == "pass"));
}
