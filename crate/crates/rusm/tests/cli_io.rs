//! End-to-end command-line behavior: exit codes, file outputs, and
//! determinism, all via `cli_main` in process.

use rusm::harness::cli_main;

fn rusm(args: &[&str]) -> i32 {
    let mut argv = vec!["rusm".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    cli_main(&argv)
}

#[test]
fn curve_csv_has_grid_times_curves_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    assert_eq!(rusm(&["curve", "--grid", "0:1:0.01", "--out", out.to_str().unwrap()]), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "beta,curve_id,alpha");
    assert_eq!(lines.len(), 1 + 101 * 4);
    assert!(lines[1].starts_with("0,monotone_thm1,"));
    assert!(lines.last().unwrap().starts_with("1,algo_negative_beta_e,"));

    assert_eq!(rusm(&["curve", "--grid", "0:1"]), 2);
    assert_eq!(rusm(&["curve", "--grid", "0:3:0.5"]), 2); // outside the curve domain
}

#[test]
fn gap_pass_and_fail_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gap.json");
    assert_eq!(
        rusm(&[
            "gap",
            "--family",
            "monotone_sec3",
            "--n",
            "10000",
            "--r",
            "0.367879",
            "--alpha",
            "0.6321",
            "--beta",
            "1",
            "--out",
            out.to_str().unwrap(),
        ]),
        0
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["descriptor"]["family"], "monotone_sec3");

    // A modest α is not refuted by the family, which the check reports as a
    // failure.
    assert_eq!(
        rusm(&[
            "gap",
            "--family",
            "monotone_sec3",
            "--n",
            "10000",
            "--r",
            "0.367879",
            "--alpha",
            "0.5",
            "--beta",
            "1",
        ]),
        1
    );
    // Missing family parameter.
    assert_eq!(
        rusm(&[
            "gap",
            "--family",
            "negative_sec5",
            "--n",
            "10",
            "--r",
            "0.3",
            "--alpha",
            "0.4",
            "--beta",
            "1"
        ]),
        2
    );
}

#[test]
fn validate_reports_witness_and_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("super.json");
    // One negative edge makes the cut function supermodular somewhere.
    std::fs::write(
        &file,
        r#"{"n": 3, "g": {"kind": "cut", "params": {"edges": [[0, 1, 1.0], [1, 2, -0.5]]}}, "ell": [0.0, 0.0, 0.0]}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    assert_eq!(
        rusm(&[
            "validate",
            "--file",
            file.to_str().unwrap(),
            "--property",
            "submodular",
            "--out",
            out.to_str().unwrap(),
        ]),
        1
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
    assert!(report["witness"].is_object(), "failure must carry a witness");

    // The same file is a perfectly fine non-negativity failure too.
    assert_eq!(
        rusm(&["validate", "--file", file.to_str().unwrap(), "--property", "nonnegative"]),
        1
    );
    // And a passing property exits zero.
    assert_eq!(
        rusm(&[
            "validate",
            "--family",
            "negative_sec5",
            "--n",
            "3",
            "--t",
            "2",
            "--r",
            "0.4",
            "--property",
            "submodular"
        ]),
        0
    );
    assert_eq!(
        rusm(&[
            "validate",
            "--family",
            "negative_sec5",
            "--n",
            "3",
            "--t",
            "2",
            "--r",
            "0.4",
            "--property",
            "monotone"
        ]),
        1
    );
}

#[test]
fn schema_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"n": 3, "g": {"kind": "cut", "params": {"edges": []}}, "ell": [0.0]}"#,
    )
    .unwrap();
    assert_eq!(rusm(&["solve", "--file", file.to_str().unwrap(), "--algorithm", "brute"]), 2);
    assert_eq!(rusm(&["solve", "--file", "/nonexistent.json", "--algorithm", "brute"]), 2);
    assert_eq!(rusm(&["frobnicate"]), 2);
    assert_eq!(rusm(&["solve", "--algorithm", "brute"]), 2); // no instance picked
    assert_eq!(
        rusm(&["solve", "--random", "cut", "--n", "6", "--file", "x.json", "--algorithm", "brute"]),
        2
    ); // two instance sources
    assert_eq!(
        rusm(&["verify", "--random", "cut", "--n", "6", "--algorithm", "brute", "--check", "half"]),
        2
    );
    // Local search without β.
    assert_eq!(rusm(&["solve", "--random", "cut", "--n", "6", "--algorithm", "ls"]), 2);
    assert_eq!(rusm(&["--help"]), 0);
    assert_eq!(rusm(&["--version"]), 0);
}

#[test]
fn solve_writes_a_replayable_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let args = [
        "solve",
        "--random",
        "coverage",
        "--n",
        "9",
        "--ell-sign",
        "mixed",
        "--gen-seed",
        "12",
        "--algorithm",
        "ls",
        "--beta",
        "0.5",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(rusm(&args), 0);
    let first = std::fs::read(&out).unwrap();
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["algorithm"], "ls");
    assert_eq!(report["n"], 9);
    assert!(report["ls"]["expected_output_value"].is_number());
    assert!(
        (report["g_value"].as_f64().unwrap() + report["ell_value"].as_f64().unwrap()
            - report["objective"].as_f64().unwrap())
        .abs()
            < 1e-12
    );

    assert_eq!(rusm(&args), 0);
    assert_eq!(std::fs::read(&out).unwrap(), first, "same seed must reproduce the report");
}

#[test]
fn verify_writes_deterministic_results_and_warns_on_exploratory_misses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let csv = dir.path().join("trials.csv");
    let args = [
        "verify",
        "--random",
        "cut",
        "--n",
        "8",
        "--ell-sign",
        "non-negative",
        "--gen-seed",
        "4",
        "--algorithm",
        "dg-rand",
        "--trials",
        "400",
        "--seed",
        "11",
        "--check",
        "0.5:0.75",
        "--check",
        "0.99:0.01",
        "--out",
        out.to_str().unwrap(),
        "--trials-csv",
        csv.to_str().unwrap(),
    ];
    // α = 0.99 is exploratory; even if its mean misses, the exit code stays
    // zero. The guaranteed α = 0.5 check must hold.
    assert_eq!(rusm(&args), 0);
    let first = std::fs::read(&out).unwrap();
    let result: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(result["checks"][0]["label"], "guaranteed");
    assert_eq!(result["checks"][0]["passed"], true);
    assert_eq!(result["checks"][1]["label"], "exploratory");
    assert_eq!(result["wall_time_ms"], 0);

    let rows: Vec<String> =
        std::fs::read_to_string(&csv).unwrap().lines().map(String::from).collect();
    assert_eq!(rows.len(), 1 + 400);
    assert_eq!(rows[0], "trial,seed,g_value,ell_value,total,queries");
    assert!(rows[1].starts_with("0,11:0,"));
    assert!(rows[400].starts_with("399,11:399,"));

    assert_eq!(rusm(&args), 0);
    assert_eq!(std::fs::read(&out).unwrap(), first, "rerun must be byte-identical");
}

#[test]
fn hard_families_flow_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ls_result.json");
    assert_eq!(
        rusm(&[
            "verify",
            "--family",
            "monotone_sec3",
            "--n",
            "6",
            "--r",
            "0.1",
            "--algorithm",
            "ls",
            "--beta",
            "0.5",
            "--trials",
            "200",
            "--seed",
            "5",
            "--check",
            "0.158:0.4917",
            "--out",
            out.to_str().unwrap(),
        ]),
        0
    );
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // α(1/2) = 1/6; with ε = 0.05·α(β) the guarantee region contains
    // (0.158, 0.4917).
    assert_eq!(result["checks"][0]["label"], "guaranteed");
    assert_eq!(result["checks"][0]["passed"], true);
    assert_eq!(result["n"], 6);
    assert_eq!(result["ell_sign"], "non_positive");
}
