use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn charquant(args: &[&str]) -> Output {
    charquant_env(args, &[])
}

fn charquant_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_charquant"));
    cmd.args(args).env_remove("CHARQUANT_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with JSON output, checks the exit code and validates against the schema.
fn json(args: &[&str], expected_code: i32) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = charquant(&all);
    assert_eq!(code(&out), expected_code, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    doc
}

fn ranks(report: &Value) -> Vec<u64> {
    report["degrees"].as_array().unwrap().iter().map(|d| d["free_rank"].as_u64().unwrap()).collect()
}

#[test]
fn restricted_operator_coefficients() {
    let doc = json(&["hochschild", "--p", "2", "--coefficients", "restricted-d", "--max-degree", "3"], 0);
    assert_eq!(doc["overall_pass"], true);
    assert_eq!(ranks(&doc["reports"][0]), vec![2, 0, 0]);
    assert_eq!(doc["config"]["max_degree"], 3);
}

#[test]
fn structure_sheaf_coefficients() {
    let doc = json(&["hochschild", "--p", "2", "--coefficients", "structure", "--max-degree", "3"], 0);
    assert_eq!(ranks(&doc["reports"][0]), vec![2, 2, 2]);
}

#[test]
fn crystalline_coefficients_record_the_default_order() {
    let doc = json(&["hochschild", "--p", "2", "--coefficients", "full-d"], 0);
    assert_eq!(doc["config"]["max_order"], serde_json::json!([4]));
    assert_eq!(ranks(&doc["reports"][0]), vec![2]);
}

#[test]
fn resolution_and_reduced() {
    let doc = json(&["resolution-check", "--p", "5"], 0);
    assert_eq!(doc["reports"][0]["pass"], true);
    let doc = json(&["reduced-complex", "--p", "3", "--max-degree", "4"], 0);
    assert_eq!(ranks(&doc["reports"][0]), vec![1, 0, 0, 0]);
}

#[test]
fn azumaya_fibers() {
    json(&["azumaya", "--p", "2"], 0);
    let doc = json(&["azumaya", "--p", "3", "--points", "0,1,2"], 0);
    let fibers = doc["reports"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().contains("fiber"))
        .count();
    assert_eq!(fibers, 3);
}

#[test]
fn two_sided() {
    let doc = json(&["two-sided", "--p", "2", "--max-degree", "2"], 0);
    assert_eq!(ranks(&doc["reports"][0])[0], 4);
}

#[test]
fn identities_are_deterministic() {
    let args = ["identities", "--p", "3", "--samples", "100", "--seed", "42", "--format", "json"];
    let (a, b) = (charquant(&args), charquant(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = charquant(&["identities", "--p", "3", "--samples", "100", "--seed", "7", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn strict_identities_fail_on_the_chain_level_statement() {
    let doc = json(&["identities", "--p", "2", "--strict"], 1);
    assert_eq!(doc["overall_pass"], false);
    let failed: Vec<&str> = doc["reports"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["Gerstenhaber bracket vanishes on the Pol image at chain level"]);
}

#[test]
fn aggregated_report() {
    let doc = json(&["report", "--all", "--p", "2,3"], 0);
    assert_eq!(doc["overall_pass"], true);
    let reports = doc["reports"].as_array().unwrap();
    for p in [2, 3] {
        assert!(reports.iter().filter(|r| r["p"] == p).count() >= 10);
    }
    let args = ["report", "--all", "--p", "2,3", "--format", "json"];
    assert_eq!(charquant(&args).stdout, charquant_env(&args, &[("CHARQUANT_THREADS", "1")]).stdout);
}

#[test]
fn report_skips_oversized_suites() {
    let doc = json(&["report", "--p", "11"], 0);
    let skipped: Vec<&str> = doc["skipped"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert!(skipped.iter().any(|s| s.starts_with("resolution")));
    assert!(skipped.iter().any(|s| s.starts_with("two-sided")));
}

#[test]
fn table_output() {
    let out = charquant(&["report", "--all", "--p", "2", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("overall: PASS\n"));
    let lines: Vec<&str> = text.lines().collect();
    for (i, line) in lines.iter().enumerate() {
        if line.starts_with("check ") {
            let rule = lines[i + 1];
            let result_col = line.find("result").unwrap();
            assert_eq!(rule.find("  ------").map(|c| c + 2), Some(result_col), "{line}");
            for row in lines[i + 2..].iter().take_while(|l| !l.is_empty() && !l.starts_with("note:")) {
                let verdict: String = row.chars().skip(result_col).take(4).collect();
                assert!(verdict == "PASS" || verdict == "FAIL", "{row}");
            }
        }
    }
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("charquant-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = charquant(&["reduced-complex", "--p", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_with_2() {
    let cases: &[&[&str]] = &[
        &["hochschild"],
        &["hochschild", "--p", "4"],
        &["hochschild", "--p", "17"],
        &["hochschild", "--p", "2", "--coefficients", "nonsense"],
        &["hochschild", "--p", "2", "--max-degree", "1"],
        &["hochschild", "--p", "2", "--coefficients", "full-d", "--max-order", "3"],
        &["hochschild", "--p", "2", "--max-order", "6"],
        &["hochschild", "--p", "7", "--coefficients", "restricted-d"],
        &["resolution-check", "--p", "14"],
        &["resolution-check", "--p", "11"],
        &["azumaya", "--p", "4"],
        &["azumaya", "--p", "3", "--points", "3"],
        &["identities", "--p", "3", "--samples", "0"],
        &["two-sided", "--p", "5"],
        &["report", "--p", "2", "--format", "xml"],
        &["frobnicate"],
        &[],
        &["reduced-complex", "--p", "2", "--output", "/nonexistent-dir/out.json"],
    ];
    for args in cases {
        assert_eq!(code(&charquant(args)), 2, "{args:?}");
    }
    for threads in ["0", "-1", "many"] {
        let out = charquant_env(&["reduced-complex", "--p", "2"], &[("CHARQUANT_THREADS", threads)]);
        assert_eq!(code(&out), 2, "CHARQUANT_THREADS={threads}");
    }
}

#[test]
fn success_and_help_exit_with_0() {
    assert_eq!(code(&charquant(&["--help"])), 0);
    assert_eq!(code(&charquant(&["--version"])), 0);
    assert_eq!(code(&charquant(&["reduced-complex", "--p", "2"])), 0);
    assert_eq!(code(&charquant_env(&["reduced-complex", "--p", "2"], &[("CHARQUANT_THREADS", "2")])), 0);
}

#[test]
fn progress_goes_to_stderr() {
    let out = charquant(&["reduced-complex", "--p", "2", "--format", "json"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("running"));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
}
