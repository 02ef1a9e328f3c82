use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kpsh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpsh")).args(args).output().expect("run kpsh")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn suites() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("suites")
}

fn write_suite(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("test.suite");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn bundled_suite_matches_golden_report() {
    let suite = suites().join("core.suite");
    let golden = suites().join("core.golden.json");
    let out = kpsh(&["run-suite", suite.to_str().unwrap(), "--jobs", "4", "--golden", golden.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAILED"));
    assert!(!text.contains("golden report mismatch"));
}

#[test]
fn structured_output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(
        dir.path(),
        r#"
[[job]]
name = "b"
check = "module-k-hopf"
group = "Z3"
subgroup = "1"
cutoff = 2

[[job]]
name = "a"
check = "restriction-gram"
group = "Q8"
subgroup = "center"

[[job]]
name = "c"
check = "hopf-power-law"
power = 2
cutoff = 3
"#,
    );
    let path = suite.to_str().unwrap();
    let one = kpsh(&["--format", "structured", "run-suite", path, "--jobs", "1"]);
    let three = kpsh(&["--format", "structured", "run-suite", path, "--jobs", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&three));
    let value: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    let names: Vec<&str> = value["jobs"].as_array().unwrap().iter().map(|j| j["job"].as_str().unwrap()).collect();
    assert_eq!(names, ["a", "b", "c"]);
}

#[test]
fn unknown_group_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(
        dir.path(),
        r#"
[[job]]
name = "fine"
check = "antipode"
cutoff = 3

[[job]]
name = "bad"
check = "module-k-hopf"
group = "Q9"
subgroup = "1"
cutoff = 2
"#,
    );
    let out = kpsh(&["run-suite", suite.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty(), "no job runs when validation fails");
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad"));
}

#[test]
fn oversized_wreath_product_is_rejected() {
    let out = kpsh(&["verify", "module-k-hopf", "--group", "S4", "--subgroup", "1", "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_expected_matrix_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(
        dir.path(),
        r#"
[[job]]
name = "q8"
check = "restriction-gram"
group = "Q8"
subgroup = "center"
[job.matrices]
"M" = [[1, 1, 1, 1, 0], [0, 0, 0, 1, 2]]
"#,
    );
    let out = kpsh(&["run-suite", suite.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("FAILED"));
    assert!(text.contains("entry (1, 3) is 0, expected 1"), "{text}");
}

#[test]
fn wrong_expectation_is_a_verification_failure() {
    let out = kpsh(&["verify", "restriction-gram", "--group", "Q8", "--subgroup", "center", "--informational"]);
    assert_eq!(out.status.code(), Some(1));
    let ok = kpsh(&["verify", "restriction-gram", "--group", "S3", "--subgroup", "A3", "--informational"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn stale_golden_report_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(dir.path(), "[[job]]\nname = \"x\"\ncheck = \"antipode\"\ncutoff = 3\n");
    let golden = dir.path().join("golden.json");
    let (s, g) = (suite.to_str().unwrap(), golden.to_str().unwrap());
    assert_eq!(kpsh(&["run-suite", s, "--golden", g, "--bless"]).status.code(), Some(0));
    assert_eq!(kpsh(&["run-suite", s, "--golden", g]).status.code(), Some(0));
    std::fs::write(&suite, "[[job]]\nname = \"x\"\ncheck = \"antipode\"\ncutoff = 4\n").unwrap();
    let out = kpsh(&["run-suite", s, "--golden", g]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("golden report mismatch"));
}

#[test]
fn computes_values() {
    assert_eq!(stdout(&kpsh(&["lr", "3,2,1", "2,1", "2,1"])).trim(), "2");
    assert_eq!(stdout(&kpsh(&["hopf-power", "2", "s[2]"])).trim(), "3*s[2] + 1*s[1,1]");
    assert_eq!(stdout(&kpsh(&["mhg", "--group", "Q8", "--subgroup", "center"])), "1 1 1 1 0\n0 0 0 0 2\n");
}

#[test]
fn character_table_formats() {
    let csv = stdout(&kpsh(&["--format", "csv", "char-table", "--group", "Z2"]));
    assert!(csv.lines().count() >= 3, "{csv}");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&kpsh(&["--format", "structured", "char-table", "--group", "S3"]))).unwrap();
    assert_eq!(json["order"], 6);
    assert_eq!(json["class_sizes"], serde_json::json!([1, 3, 2]));
}

#[test]
fn malformed_partition_is_an_input_error() {
    assert_eq!(kpsh(&["lr", "3,x", "1", "2"]).status.code(), Some(2));
}

#[test]
fn block_sizes_are_comma_separated() {
    let ok = kpsh(&["verify", "double-cosets", "--group", "Z2", "--subgroup", "1", "--blocks", "1,1,2,0"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let short = kpsh(&["verify", "double-cosets", "--group", "Z2", "--subgroup", "1", "--blocks", "1,1"]);
    assert_eq!(short.status.code(), Some(2));
    let unbalanced = kpsh(&["verify", "double-cosets", "--group", "Z2", "--subgroup", "1", "--blocks", "1,1,1,0"]);
    assert_eq!(unbalanced.status.code(), Some(2));
}
