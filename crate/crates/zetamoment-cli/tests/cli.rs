//! End-to-end tests of the `zetamoment` binary: golden table bytes, exit
//! codes, JSON record shape against the shipped schema, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_zetamoment"));
    c.env_remove("ZETAMOMENT_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/verify-schema.json");
    let text = std::fs::read_to_string(path).expect("schema ships in the repo");
    serde_json::from_str(&text).expect("schema is valid JSON")
}

/// Field-level validation of an emitted object against the shipped
/// draft-07 schema: required keys present, no extra keys, types match.
fn validate_against(schema_def: &Value, obj: &Value) {
    let required = schema_def["required"].as_array().expect("required list");
    let properties = schema_def["properties"].as_object().expect("properties");
    let map = obj.as_object().expect("record is an object");
    for key in required {
        assert!(
            map.contains_key(key.as_str().unwrap()),
            "missing required field {key} in {obj}"
        );
    }
    for (key, value) in map {
        let prop = properties
            .get(key)
            .unwrap_or_else(|| panic!("unexpected field {key} in {obj}"));
        let ty = prop["type"].as_str().unwrap();
        let ok = match ty {
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            other => panic!("unhandled schema type {other}"),
        };
        assert!(ok, "field {key} has wrong type in {obj}");
    }
}

#[test]
fn table_matches_reference_rows_byte_for_byte() {
    let out = run(&["table", "--max-n", "5"]);
    assert!(out.status.success());
    let want = "0\tζ(2)\n\
                1\tζ(3)\n\
                2\t7ζ(4)\n\
                3\t6[ζ(5) + ζ(2)ζ(3)]\n\
                4\t279/2ζ(6)\n\
                5\t30[4ζ(7) + 4ζ(2)ζ(5) + 7ζ(3)ζ(4)]\n";
    assert_eq!(stdout_str(&out), want);
}

#[test]
fn table_single_row() {
    let out = run(&["table", "--max-n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), "0\tζ(2)\n");
}

#[test]
fn table_extends_past_golden_rows() {
    let out = run(&["table", "--max-n", "9"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("ζ(11)"), "row 9 should mention ζ(11): {text}");
}

#[test]
fn moment_reports_agreement() {
    let out = run(&["moment", "2", "--digits", "20"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("7ζ(4)"), "{text}");
    assert!(text.contains("digits agreed"), "{text}");
}

#[test]
fn moment_json_is_wellformed() {
    let out = run(&["moment", "0", "--digits", "20", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["n"], 0);
    assert_eq!(v["closed_form"], "ζ(2)");
    assert!(v["digits_agreed"].as_i64().unwrap() >= 18);
    // The decimal strings round-trip at their stated precision.
    let quoted = v["quadrature"].as_str().unwrap();
    let parsed: zetamoment::BigReal = quoted.parse().unwrap();
    assert_eq!(parsed.to_string(), quoted);
}

#[test]
fn moment_two_at_thirty_digits_agrees_past_28() {
    let out = run(&["moment", "2", "--digits", "30", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["closed_form"], "7ζ(4)");
    assert!(v["digits_agreed"].as_i64().unwrap() >= 28, "{v}");
}

#[test]
fn moment_usage_error_is_exit_one() {
    let out = run(&["moment", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["moment", "1", "--digits", "5"]);
    assert_eq!(out.status.code(), Some(1), "precision below 15 is a usage error");
}

#[test]
fn zeta_methods_and_parity_guard() {
    let out = run(&["zeta", "5", "--method", "thm4", "--digits", "25"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).starts_with("zeta(5) = 1.036927755143369926"), "{}", stdout_str(&out));

    let out = run(&["zeta", "4", "--method", "thm2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["zeta", "3", "--method", "thm1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["zeta", "6", "--method", "thm1", "--digits", "25"]);
    assert!(out.status.success());

    let reference = run(&["zeta", "6", "--method", "reference", "--digits", "25"]);
    assert_eq!(stdout_str(&out), stdout_str(&reference));
}

#[test]
fn env_var_sets_default_precision() {
    let out = bin()
        .env("ZETAMOMENT_PRECISION", "25")
        .args(["zeta", "3", "--method", "reference"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_str(&out).trim().ends_with("@25"), "{}", stdout_str(&out));

    let out = bin()
        .env("ZETAMOMENT_PRECISION", "not-a-number")
        .args(["zeta", "3", "--method", "reference"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_exact_suite_passes_and_is_schema_valid() {
    let out = run(&["verify", "--suite", "exact", "--max-n", "20", "--format", "json"]);
    assert!(out.status.success(), "exact suite must pass");
    let schema = schema();
    let record_schema = &schema["definitions"]["record"];
    let summary_schema = &schema["definitions"]["summary"];

    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() > 100, "expected the full exact battery, got {}", lines.len());
    for line in &lines[..lines.len() - 1] {
        let v: Value = serde_json::from_str(line).expect("record line parses");
        validate_against(record_schema, &v);
        assert_eq!(v["status"], "pass", "{v}");
    }
    let summary: Value = serde_json::from_str(lines[lines.len() - 1]).unwrap();
    validate_against(summary_schema, &summary);
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["suite"], "exact");
}

#[test]
fn verify_all_record_shapes_are_schema_valid() {
    // A small all-suite run exercises every record family, including the
    // numeric, generalized and residual shapes.
    let out = run(&[
        "verify", "--suite", "all", "--max-n", "1", "--digits", "20", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stdout_str(&out));
    let schema = schema();
    let record_schema = &schema["definitions"]["record"];
    let summary_schema = &schema["definitions"]["summary"];
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    for line in &lines[..lines.len() - 1] {
        let v: Value = serde_json::from_str(line).unwrap();
        validate_against(record_schema, &v);
    }
    let summary: Value = serde_json::from_str(lines[lines.len() - 1]).unwrap();
    validate_against(summary_schema, &summary);
    assert_eq!(summary["suite"], "all");
    // The mixed run contains at least one of each family.
    for family in ["table/", "matrix-inverse/", "moment-closed/", "gen-catalan/", "q-residual/"] {
        assert!(text.contains(family), "missing {family} records");
    }
}

#[test]
fn verify_records_are_sorted_and_deterministic() {
    let args = ["verify", "--suite", "exact", "--max-n", "6", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());

    let strip_elapsed = |raw: &Output| -> Vec<Value> {
        stdout_str(raw)
            .lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                if let Some(obj) = v.as_object_mut() {
                    obj.remove("elapsed_ms");
                }
                v
            })
            .collect()
    };
    let a = strip_elapsed(&first);
    let b = strip_elapsed(&second);
    assert_eq!(a, b, "verification output must be deterministic");

    let ids: Vec<String> = a
        .iter()
        .filter(|v| v.get("identity_id").is_some())
        .map(|v| v["identity_id"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "records must be emitted in identity_id order");
}

#[test]
fn verify_text_mode_is_byte_deterministic() {
    let args = ["verify", "--suite", "exact", "--max-n", "4"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(stdout_str(&first), stdout_str(&second));
}

#[test]
fn verify_failure_exits_three() {
    // An unreachable threshold forces numeric records to fail.
    let out = run(&[
        "verify",
        "--suite",
        "numeric",
        "--max-n",
        "1",
        "--digits",
        "20",
        "--numeric-threshold",
        "9000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout_str(&out);
    assert!(text.contains("FAIL"), "{text}");
}

#[test]
fn verify_numeric_small_passes() {
    let out = run(&["verify", "--suite", "numeric", "--max-n", "1", "--digits", "20"]);
    assert!(
        out.status.success(),
        "numeric suite failed:\n{}",
        stdout_str(&out)
    );
    let text = stdout_str(&out);
    assert!(text.contains("thm4-internal/n=01"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("summary:"), "{text}");
}

#[test]
fn verify_generalized_small_passes() {
    let out = run(&["verify", "--suite", "generalized", "--max-n", "0", "--digits", "22"]);
    assert!(
        out.status.success(),
        "generalized suite failed:\n{}",
        stdout_str(&out)
    );
    let text = stdout_str(&out);
    assert!(text.contains("gen-catalan/1"), "{text}");
}
