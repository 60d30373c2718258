//! CLI-level acceptance checks: exit-code contract, document shape, and
//! criterion 7 (byte-identical structured output regardless of the worker
//! count).

use std::path::Path;
use std::process::{Command, Output};

fn totsym() -> Command {
    Command::new(env!("CARGO_BIN_EXE_totsym"))
}

fn run(args: &[&str]) -> Output {
    totsym().args(args).output().expect("spawn totsym")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn verify_exit_codes_partition_outcomes() {
    // Totally symmetric: exit 0.
    let ok = run(&[
        "verify", "--group", "S4", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)",
    ]);
    assert_eq!(code(&ok), 0, "{}", stdout_of(&ok));

    // Not totally symmetric: exit 1 with the first unrealized permutation.
    let negative = run(&["verify", "--group", "S4", "(1 2)", "(3 4)", "(1 3)"]);
    assert_eq!(code(&negative), 1);
    assert!(stdout_of(&negative).contains("NOT totally symmetric"));

    // Singleton: exit 0.
    let singleton = run(&["verify", "--group", "S3", "(1 2)"]);
    assert_eq!(code(&singleton), 0);

    // Parse error: exit 2 with a location.
    let bad = run(&["verify", "--group", "S4", "(1 5)"]);
    assert_eq!(code(&bad), 2);
    let stderr = String::from_utf8(bad.stderr).unwrap();
    assert!(stderr.contains("out of range"), "{stderr}");

    // Element outside the group: exit 2.
    let outside = run(&["verify", "--group", "A4", "(1 2)"]);
    assert_eq!(code(&outside), 2);
}

#[test]
fn search_reports_the_s6_classification() {
    let output = run(&["search", "--group", "S6", "--size", "5", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(doc["result"]["class_count"], 2);
    assert_eq!(doc["result"]["total_count"], 12);
    assert_eq!(doc["result"]["complete"], true);
    assert_eq!(doc["config"]["command"], "search");
}

#[test]
fn search_s3_size_3_includes_the_transposition_class() {
    let output = run(&["search", "--group", "S3", "--size", "3", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(doc["result"]["class_count"], 1);
    let members: Vec<String> = doc["result"]["classes"][0]["representative"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let expect: std::collections::BTreeSet<&str> =
        ["(1 2)", "(1 3)", "(2 3)"].into_iter().collect();
    let got: std::collections::BTreeSet<&str> =
        members.iter().map(String::as_str).collect();
    assert_eq!(got, expect);
}

#[test]
fn search_from_group_file() {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/D5.grp");
    let output = run(&[
        "search",
        "--group-file",
        fixture.to_str().unwrap(),
        "--size",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    // Two reflection-pair orbits of size 5 and the two rotation inverse
    // pairs, each a fixed set.
    assert_eq!(doc["result"]["class_count"], 4);
    assert_eq!(doc["result"]["total_count"], 12);
    assert_eq!(doc["result"]["group"], "D5");
}

#[test]
fn theorems_classify_and_hoelder_pass() {
    let classify = run(&["theorems", "classify", "--n", "4"]);
    assert_eq!(code(&classify), 0);
    assert!(stdout_of(&classify).contains("PASS"));

    let hoelder = run(&["theorems", "hoelder", "--n", "5", "--m", "4", "--format", "json"]);
    assert_eq!(code(&hoelder), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&hoelder)).unwrap();
    assert_eq!(doc["result"]["pass"], true);
    assert_eq!(doc["result"]["hoelder"][0]["part"], 1);
}

#[test]
fn budget_exhaustion_exits_3_with_partial_results() {
    let output = run(&[
        "search", "--group", "S7", "--size", "6", "--budget", "1", "--format", "json",
    ]);
    assert_eq!(code(&output), 3);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(doc["result"]["complete"], false);
}

#[test]
fn zero_budget_is_an_input_error() {
    let output = run(&["search", "--group", "S3", "--size", "2", "--budget", "0"]);
    assert_eq!(code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("budget must be positive"), "{stderr}");
}

#[test]
fn raw_search_lists_every_set() {
    let output = run(&[
        "search", "--group", "S4", "--size", "3",
        "--up-to-conjugacy", "false", "--format", "json",
    ]);
    assert_eq!(code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    // 4 stars + 4 triangles + 1 Klein set, each listed individually.
    assert_eq!(doc["result"]["class_count"], 9);
    assert_eq!(doc["result"]["total_count"], 9);
    assert_eq!(doc["config"]["up_to_conjugacy"], false);
}

#[test]
fn budget_env_var_sets_the_default() {
    let output = totsym()
        .env("TOTSYM_BUDGET", "77")
        .args(["search", "--group", "S3", "--size", "2", "--format", "json"])
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(doc["config"]["budget_secs"], 77);
}

#[test]
fn config_echo_round_trips() {
    let output = run(&["search", "--group", "S4", "--size", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let config_text = serde_json::to_string(&doc["config"]).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&config_text).unwrap();
    assert_eq!(doc["config"], reparsed);
    assert_eq!(doc["config"]["size"], 3);
    // The worker count is execution detail, not configuration.
    assert!(doc["config"].get("jobs").is_none());
}

#[test]
fn out_flag_writes_the_document() {
    let dir = std::env::temp_dir().join("totsym-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("search.json");
    let output = run(&[
        "search", "--group", "S4", "--size", "3", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["result"]["class_count"], 3);
}

/// Criterion 7: identical configuration produces byte-identical structured
/// output with 1 worker and with 8.
#[test]
fn criterion_7_output_independent_of_worker_count() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["theorems", "classify", "--n", "4", "--format", "json"],
        vec!["theorems", "classify", "--n", "6", "--format", "json"],
        vec!["search", "--group", "S6", "--size", "5", "--format", "json"],
        vec!["theorems", "hoelder", "--n", "6", "--m", "6", "--format", "json"],
        vec!["theorems", "bound", "--max-order", "119", "--format", "json"],
    ];
    for command in &commands {
        let mut single = command.clone();
        single.extend(["--jobs", "1"]);
        let mut many = command.clone();
        many.extend(["--jobs", "8"]);
        let out_single = run(&single);
        let out_many = run(&many);
        assert_eq!(code(&out_single), 0, "{command:?} failed with --jobs 1");
        assert_eq!(code(&out_many), 0, "{command:?} failed with --jobs 8");
        assert_eq!(
            stdout_of(&out_single),
            stdout_of(&out_many),
            "{command:?}: output differs between --jobs 1 and --jobs 8"
        );
    }
    println!(
        "criterion 7 (byte-identical output, {} commands, jobs 1 vs 8): PASS",
        commands.len()
    );
}
