//! End-to-end tests of the binary: exit codes, JSON schema stability, and the
//! documented command examples.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxeterkit"))
        .args(args)
        .env_remove("COXETERKIT_FIBER_CAP")
        .env_remove("COXETERKIT_MATRIX_CAP")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, Output) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let stdout = String::from_utf8(out.stdout.clone()).expect("utf8 stdout");
    let value: Value = serde_json::from_str(stdout.trim())
        .unwrap_or_else(|e| panic!("invalid JSON from {args:?}: {e}\n{stdout}"));
    // Stability: parse -> re-emit reproduces the emitted line exactly.
    assert_eq!(
        serde_json::to_string(&value).unwrap(),
        stdout.trim(),
        "JSON not stable under re-serialization for {args:?}"
    );
    (value, out)
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn chi_cyclo_form_weight_triple() {
    let (v, out) = run_json(&["chi", "2", "3", "5", "--form", "cyclo"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(v["result"]["cyclo"], serde_json::json!([[30, "1"]]));
    assert_eq!(v["result"]["degree"], "8");

    let (v, _) = run_json(&["chi", "3", "3", "3", "--form", "cyclo"]);
    assert_eq!(
        v["result"]["cyclo"],
        serde_json::json!([[1, "2"], [3, "3"]])
    );
}

#[test]
fn chi_poly_form_single_two() {
    let (v, out) = run_json(&["chi", "2", "--form", "poly"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(v["result"]["coefficients"], serde_json::json!(["1", "1"]));
    assert_eq!(v["result"]["degree"], 1);
}

#[test]
fn chi_algebra_appends_two_for_even_s() {
    let (even, _) = run_json(&["chi", "3", "4", "--algebra"]);
    assert_eq!(
        even["result"]["effective_weights"],
        serde_json::json!([2, 3, 4])
    );
    let (direct, _) = run_json(&["chi", "2", "3", "4"]);
    assert_eq!(
        even["result"]["coefficients"],
        direct["result"]["coefficients"]
    );

    let (odd, _) = run_json(&["chi", "2", "3", "5", "--algebra"]);
    assert_eq!(
        odd["result"]["effective_weights"],
        serde_json::json!([2, 3, 5])
    );
}

#[test]
fn chi_factored_form() {
    let (v, _) = run_json(&["chi", "3", "4", "--form", "factored"]);
    assert_eq!(
        v["result"]["factors"],
        serde_json::json!([[1, "1"], [3, "-1"], [4, "-1"], [12, "1"]])
    );
}

#[test]
fn chi_rejects_invalid_weights() {
    let out = run(&["chi", "1", "5"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("smaller than 2"));
}

#[test]
fn recover_from_weights_roundtrip() {
    let (v, out) = run_json(&["recover", "--from-weights", "3", "4", "5", "6", "7"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(v["result"]["canonical"], serde_json::json!([3, 4, 5, 6, 7]));
    assert_eq!(v["result"]["n"], 420);
    assert_eq!(v["result"]["s_parity"], "odd");
    assert_eq!(v["result"]["two_parity"], "even");
}

#[test]
fn recover_phi2_coefficients() {
    let (v, out) = run_json(&["recover", "1", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(v["result"]["canonical"], serde_json::json!([2]));
}

#[test]
fn recover_negative_coefficients_and_empty_class() {
    let (v, out) = run_json(&["recover", "-1", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(v["result"]["canonical"], serde_json::json!([]));
    assert!(v["result"]["note"]
        .as_str()
        .unwrap()
        .contains("even number of 2s"));
}

#[test]
fn recover_out_of_family_exits_3() {
    let out = run(&["recover", "2", "1"]);
    assert_eq!(exit_code(&out), 3);
    // A cyclotomic product outside the family also exits 3: Phi_3^2.
    let out = run(&["recover", "1", "2", "3", "2", "1"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn recover_zero_polynomial_exits_2() {
    let out = run(&["recover", "0", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn chi_subset_limit_exits_2() {
    let mut args = vec!["chi"];
    let twos = vec!["2"; 21];
    args.extend(twos);
    let out = run(&args);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn spectrum_reference_fields() {
    let (v, out) = run_json(&["spectrum", "2", "4", "6"]);
    assert_eq!(exit_code(&out), 0);
    let r = &v["result"];
    assert_eq!(r["order"], 12);
    assert_eq!(r["m_1"], "0");
    assert_eq!(r["one_eigenvalue"], false);
    assert_eq!(r["condition"], "ii");
    assert_eq!(r["self_reciprocal"], true);
    assert_eq!(r["top_multiplicity_positive"], true);

    let (v, _) = run_json(&["spectrum", "2", "3", "4", "6"]);
    assert_eq!(v["result"]["m_1"], "2");
    assert_eq!(v["result"]["one_eigenvalue"], true);
    assert_eq!(v["result"]["condition"], Value::Null);

    let (v, _) = run_json(&["spectrum", "3"]);
    assert_eq!(v["result"]["order"], 3);
    assert_eq!(v["result"]["self_reciprocal"], true);
    assert_eq!(v["result"]["cy"]["reduced_num"], "1");
    assert_eq!(v["result"]["cy"]["reduced_den"], 3);
}

#[test]
fn spectrum_reports_precondition_failures_per_field() {
    let (v, out) = run_json(&["spectrum", "2", "2"]);
    assert_eq!(exit_code(&out), 0);
    let r = &v["result"];
    assert!(r.get("order").is_none());
    assert!(r["order_error"].as_str().unwrap().contains("more than one"));
    assert!(r.get("one_eigenvalue").is_none());
    assert_eq!(r["self_reciprocal"], false);
    assert_eq!(r["gcd"], 2);
}

#[test]
fn verify_both_oracles_small_case() {
    let (v, out) = run_json(&["verify", "3", "3", "--oracle", "both"]);
    assert_eq!(exit_code(&out), 0);
    let checks = v["result"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_fiber_reference_multiset() {
    let (_, out) = run_json(&["verify", "3", "4", "5", "6", "7", "--oracle", "fiber"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn verify_matrix_cap_exits_2() {
    let out = run(&["verify", "10", "10", "10", "10", "--oracle", "matrix"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn verify_env_cap_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxeterkit"))
        .args(["verify", "3", "3", "--oracle", "fiber"])
        .env("COXETERKIT_FIBER_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_coxeterkit"))
        .args(["verify", "3", "3", "--oracle", "fiber"])
        .env("COXETERKIT_FIBER_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Command::new(env!("CARGO_BIN_EXE_coxeterkit"))
        .args(["verify", "3", "3"])
        .env("COXETERKIT_MATRIX_CAP", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_tables_reproduce() {
    let (v, out) = run_json(&["paper-tables"]);
    assert_eq!(exit_code(&out), 0);
    let tables = v["result"]["tables"].as_array().unwrap();
    assert!(tables.len() >= 40);
    assert!(tables.iter().all(|t| t["status"] == "pass"));
}

#[test]
fn quiet_suppresses_human_output() {
    let out = run(&["chi", "2", "3", "5", "--quiet"]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());
    // --quiet --json still prints the record.
    let out = run(&["chi", "2", "3", "5", "--quiet", "--json"]);
    assert!(!out.stdout.is_empty());
}

#[test]
fn record_envelope_has_command_and_input() {
    let (v, _) = run_json(&["chi", "4", "6"]);
    assert_eq!(v["command"], "chi");
    assert_eq!(v["input"]["weights"], serde_json::json!([4, 6]));
    assert_eq!(v["input"]["form"], "poly");
}
