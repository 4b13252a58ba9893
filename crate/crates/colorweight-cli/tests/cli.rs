//! End-to-end tests driving the compiled binary: output text, JSON shapes,
//! and the exit-code contract (0 success, 1 disagreement, 2 bad input).

use std::fs;
use std::process::{Command, Output};

use colorweight::diagram::catalog;
use colorweight::poly::CenterPoly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorweight"))
        .args(args)
        .output()
        .expect("the binary runs")
}

/// Run expecting success and return stdout.
fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "`colorweight {}` failed:\n{}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

#[test]
fn weight_of_the_crossing_pair() {
    assert_eq!(stdout(&["weight", "-d", "1 2 1 2"]).trim(), "c^2 - e*y");
}

#[test]
fn weight_of_the_empty_diagram_is_one() {
    assert_eq!(stdout(&["weight", "-d", ""]).trim(), "1");
}

#[test]
fn deframing_and_sign_evaluation_compose() {
    let out = stdout(&["weight", "--deframed", "--epsilon", "-1", "-d", "1 2 1 2"]);
    assert_eq!(out.trim(), "y");
    let plus = stdout(&["weight", "--deframed", "--epsilon", "+1", "-d", "1 2 1 2"]);
    assert_eq!(plus.trim(), "-y");
}

#[test]
fn both_methods_agree_and_say_so() {
    let out = stdout(&["weight", "--method", "both", "-d", "1 2 1 3 2 3"]);
    assert!(out.contains("recurrence: c^3 - 2*e*c*y + y"), "{out}");
    assert!(out.contains("agreement:  yes"), "{out}");
}

#[test]
fn oracle_respects_the_cut_flag() {
    let out = stdout(&[
        "weight", "--method", "oracle", "--cut", "2", "-d", "1 2 1 2",
    ]);
    assert_eq!(out.trim(), "c^2 - e*y");
}

#[test]
fn json_output_round_trips() {
    let out = stdout(&["weight", "--format", "json", "-d", "1 2 3 4 1 2 3 4"]);
    let value: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    let parsed = CenterPoly::from_json(&value).expect("polynomial JSON shape");
    let direct = colorweight::weights::WeightSystem::new()
        .weight_recurrence(&colorweight::diagram::ChordDiagram::parse("1 2 3 4 1 2 3 4").unwrap());
    assert_eq!(parsed, direct);
}

#[test]
fn malformed_codes_are_input_errors() {
    let out = run(&["weight", "-d", "1 2 1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_input_is_an_input_error() {
    assert_eq!(run(&["weight"]).status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(run(&["weight", "--bogus"]).status.code(), Some(2));
}

#[test]
fn the_walk_is_capped_at_order_eight() {
    let code = "1 2 3 4 5 6 7 8 9 1 2 3 4 5 6 7 8 9";
    let out = run(&["weight", "--method", "oracle", "-d", code]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["weight", "--method", "both", "-d", code]);
    assert_eq!(out.status.code(), Some(2));
    // The recurrence has no such cap.
    let out = run(&["weight", "-d", code]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_of_range_cuts_are_rejected() {
    let out = run(&[
        "weight", "--method", "oracle", "--cut", "9", "-d", "1 2 1 2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jacobi_tripod_inline_and_from_file() {
    let json = catalog::tripod().to_json().to_string();
    assert_eq!(stdout(&["jacobi", "-d", &json]).trim(), "e*y");

    let path = std::env::temp_dir().join(format!("tripod-{}.json", std::process::id()));
    fs::write(&path, &json).expect("temp file writes");
    let out = stdout(&["jacobi", "-f", path.to_str().unwrap()]);
    fs::remove_file(&path).ok();
    assert_eq!(out.trim(), "e*y");
}

#[test]
fn jacobi_dump_lists_the_resolution() {
    let json = catalog::tripod().to_json().to_string();
    let out = stdout(&["jacobi", "--dump-stu", "-d", &json]);
    assert!(out.contains("+1 * \"1 1 2 2\""), "{out}");
    assert!(out.contains("-1 * \"1 2 1 2\""), "{out}");
    assert!(out.contains("weight: e*y"), "{out}");
}

#[test]
fn jacobi_json_dump_carries_both_fields() {
    let json = catalog::h_with_spectator().to_json().to_string();
    let out = stdout(&["jacobi", "--dump-stu", "--format", "json", "-d", &json]);
    let value: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    let weight = CenterPoly::from_json(&value["weight"]).expect("weight field");
    assert_eq!(weight.to_string(), "c*y + 2*y^2 - 2*e*y");
    assert!(value["resolution"].as_array().is_some_and(|r| !r.is_empty()));
}

#[test]
fn jacobi_rejects_garbage() {
    assert_eq!(run(&["jacobi", "-d", "not json"]).status.code(), Some(2));
    assert_eq!(run(&["jacobi", "-d", "{}"]).status.code(), Some(2));
}

#[test]
fn table_lists_low_orders() {
    let out = stdout(&["table", "--max-order", "2"]);
    assert!(out.contains("order 1 (1 diagram(s))"), "{out}");
    assert!(out.contains("order 2 (2 diagram(s))"), "{out}");
    assert!(out.contains("1 2 1 2  c^2 - e*y"), "{out}");
}

#[test]
fn table_filters_to_indecomposables() {
    let out = stdout(&["table", "--max-order", "4", "--indecomposable"]);
    assert!(out.contains("order 4 (6 diagram(s))"), "{out}");
    assert!(out.contains("1 2 3 4 1 2 3 4  c^4 - 6*e*c^2*y + 8*c*y + 5*y^2 - 7*e*y"), "{out}");
    // Connected sums are filtered out.
    assert!(!out.contains("1 1 2 2"), "{out}");
}

#[test]
fn table_json_has_one_section_per_order() {
    let out = stdout(&["table", "--max-order", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    let sections = value.as_array().expect("array of sections");
    assert_eq!(sections.len(), 3);
    assert_eq!(sections[2]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn table_guards_the_order_range() {
    assert_eq!(run(&["table", "--max-order", "7"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--max-order", "0"]).status.code(), Some(2));
}

#[test]
fn verify_axioms_suite_passes() {
    let out = stdout(&["verify", "axioms"]);
    assert!(out.contains("[PASS] color-axioms"), "{out}");
    assert!(out.contains("[PASS] derived-data"), "{out}");
    assert!(out.contains("[PASS] envelope-center"), "{out}");
    assert!(!out.contains("[FAIL]"), "{out}");
}

#[test]
fn verify_four_term_suite_passes() {
    let out = stdout(&["verify", "4t", "--max-order", "3"]);
    assert!(out.contains("[PASS] four-term"), "{out}");
}

#[test]
fn verify_cut_suite_reports_only() {
    let out = stdout(&["verify", "cut", "--max-order", "3"]);
    assert!(out.contains("[PASS] cut-positions"), "{out}");
}

#[test]
fn verify_json_is_a_report_array() {
    let out = stdout(&["verify", "props", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    let reports = value.as_array().expect("array of reports");
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["passed"], serde_json::json!(true));
}
