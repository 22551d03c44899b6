//! End-to-end tests of the binary: output shapes, exit codes and
//! determinism.

use std::process::{Command, Output};

fn webperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_webperm"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = webperm(args);
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    webperm(args).status.code().expect("an exit code")
}

#[test]
fn enumerates_the_smallest_web_class() {
    assert_eq!(stdout(&["enumerate", "web", "3"]), "123\n132\n213\n231\n321\n");
}

#[test]
fn enumerates_adjacent_matching_leaves() {
    assert_eq!(
        stdout(&["enumerate", "tilde-web", "5"]),
        "12345\n14523\n34125\n"
    );
    assert_eq!(
        stdout(&["enumerate", "tilde-web", "6"]),
        "123456\n125634\n145236\n341256\n345612\n364512\n534612\n563412\n"
    );
}

#[test]
fn enumerates_the_empty_permutation() {
    assert_eq!(stdout(&["enumerate", "delta", "0"]), "\n");
    assert_eq!(
        stdout(&["enumerate", "delta", "0", "--format", "json"]),
        "[\"\"]\n"
    );
}

#[test]
fn json_enumeration_parses_back() {
    let raw = stdout(&["enumerate", "web", "4", "--format", "json"]);
    let members: Vec<String> = serde_json::from_str(&raw).unwrap();
    assert_eq!(members.len(), 16);
    assert_eq!(members[0], "1234");
    let mut sorted = members.clone();
    sorted.sort();
    assert_eq!(members, sorted);
}

#[test]
fn alternating_classes_have_matching_counts() {
    let andre = stdout(&["enumerate", "andre", "4"]);
    let updown = stdout(&["enumerate", "updown", "4"]);
    assert_eq!(andre.lines().count(), 5);
    assert_eq!(updown.lines().count(), 5);
}

#[test]
fn enumeration_respects_the_size_cap() {
    let out = webperm(&["enumerate", "web", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
    // Raising the cap admits the size; the count is the zigzag number.
    let more = stdout(&["--max-n", "9", "enumerate", "web", "9"]);
    assert_eq!(more.lines().count(), 50521);
}

#[test]
fn hard_limits_gate_the_caps() {
    assert_eq!(exit_code(&["--max-n", "11", "enumerate", "web", "3"]), 2);
    assert_eq!(exit_code(&["--max-chords", "10", "enumerate", "web", "3"]), 2);
    assert_eq!(
        exit_code(&["--max-n", "11", "--unsafe-no-cap", "enumerate", "web", "3"]),
        0
    );
}

#[test]
fn gamma_table_lists_integer_rows() {
    assert_eq!(stdout(&["table", "gamma", "3"]), "1\n1\n1, 2\n");
    assert_eq!(
        stdout(&["table", "gamma", "5"]),
        "1\n1\n1, 2\n1, 8\n1, 22, 16\n"
    );
}

#[test]
fn seidel_table_matches_the_triangle() {
    assert_eq!(
        stdout(&["table", "seidel", "9"]),
        "1\n1\n1, 1\n2, 1\n2, 3, 3\n8, 6, 3\n8, 14, 17, 17\n56, 48, 34, 17\n\
         56, 104, 138, 155, 155\n"
    );
}

#[test]
fn entringer_table_drops_the_structural_zero() {
    assert_eq!(
        stdout(&["table", "entringer", "4"]),
        "1\n1, 1\n1, 2, 2\n2, 4, 5, 5\n"
    );
}

#[test]
fn first_letter_table_includes_vanishing_columns() {
    assert_eq!(
        stdout(&["table", "f", "6"]),
        "1\n1, 0\n1, 0, 0\n1, 0, 1, 0\n2, 0, 1, 0, 0\n3, 0, 3, 0, 2, 0\n"
    );
}

#[test]
fn necklace_table_lists_multiplicities() {
    assert_eq!(
        stdout(&["table", "b-plus", "3"]),
        "1, 1\n1, 1, 1\n1, 1, 2, 2\n"
    );
    assert_eq!(exit_code(&["table", "b-plus", "6"]), 2);
}

#[test]
fn polynomial_table_uses_canonical_strings() {
    assert_eq!(
        stdout(&["table", "d", "3"]),
        "1\n1*t^1*alpha^1\n1*t^2*alpha^2, 1*alpha^1\n"
    );
}

#[test]
fn json_tables_carry_row_indices() {
    let raw = stdout(&["table", "seidel", "3", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(
        rows,
        serde_json::json!([
            {"row": 1, "values": ["1"]},
            {"row": 2, "values": ["1"]},
            {"row": 3, "values": ["1", "1"]},
        ])
    );
}

#[test]
fn verification_reports_follow_the_schema() {
    let out = webperm(&["verify", "equidist", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("a JSON report");
    assert_eq!(report["suite"], "equidist");
    assert_eq!(report["params"]["max_n"], 4);
    assert_eq!(report["params"]["max_chords"], 6);
    assert!(report["elapsed_ms"].is_u64());
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c["witness"].is_null());
    }
}

#[test]
fn whole_battery_passes_at_small_caps() {
    let out = webperm(&["verify", "all", "--max-n", "4", "--max-chords", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 30);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(exit_code(&["verify", "nonsense"]), 2);
}

#[test]
fn thread_count_does_not_change_the_checks() {
    let single = webperm(&["verify", "pk-mix", "--max-n", "4", "--threads", "1"]);
    let dual = webperm(&["verify", "pk-mix", "--max-n", "4", "--threads", "2"]);
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(dual.status.code(), Some(0));
    let mut a: serde_json::Value = serde_json::from_slice(&single.stdout).unwrap();
    let mut b: serde_json::Value = serde_json::from_slice(&dual.stdout).unwrap();
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);
}

#[test]
fn data_output_is_deterministic() {
    let first = stdout(&["table", "entringer", "6"]);
    let second = stdout(&["table", "entringer", "6"]);
    assert_eq!(first, second);
    let mut a: serde_json::Value =
        serde_json::from_str(&stdout(&["verify", "lambda", "--max-n", "5"])).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_str(&stdout(&["verify", "lambda", "--max-n", "5"])).unwrap();
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);
}
