//! End-to-end tests of the binary: pinned outputs, exit codes, and
//! determinism across parallelism widths.

use std::process::{Command, Output};

fn cellstrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellstrat"))
        .args(args)
        .env_remove("CELLSTRAT_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn multiply_example() {
    let out = cellstrat(&["multiply", "--r", "2", "--x", "{1,2}{1',2'}", "--y", "{1,2}{1',2'}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "δ^1 * {1,2}{1',2'}\n");
}

#[test]
fn basis_r1_lists_two_diagrams() {
    let out = cellstrat(&["basis", "--r", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{1}{1'}\n{1,1'}\n");
}

#[test]
fn flagship_json_is_golden() {
    let out = cellstrat(&[
        "decompose", "--json", "--r", "9", "--n", "5", "--l", "9",
        "--v", "L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}", "--lambda", "7,2",
    ]);
    assert!(out.status.success());
    let golden = include_str!("golden/flagship.json");
    assert_eq!(stdout(&out), golden);
}

#[test]
fn report_round_trip_matches_text_output() {
    let json = cellstrat(&[
        "decompose", "--json", "--r", "4", "--n", "1", "--l", "2",
        "--v", "L{1}U{2,3,4}", "--lambda", "2",
    ]);
    assert!(json.status.success());
    let dir = std::env::temp_dir().join("cellstrat-report-test.json");
    std::fs::write(&dir, stdout(&json)).unwrap();
    let rendered = cellstrat(&["report", dir.to_str().unwrap()]);
    assert!(rendered.status.success());
    let direct = cellstrat(&[
        "decompose", "--r", "4", "--n", "1", "--l", "2",
        "--v", "L{1}U{2,3,4}", "--lambda", "2",
    ]);
    assert_eq!(stdout(&rendered), stdout(&direct));
}

#[test]
fn oracle_check_exit_codes() {
    let ok = cellstrat(&["oracle-check", "--r", "4", "--n", "1", "--l", "2", "--lambda", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    // a corrupted claim must be rejected, which counts as success here
    let neg = cellstrat(&[
        "oracle-check", "--r", "5", "--n", "2", "--l", "5",
        "--v", "L{1,2}L{3}U{4,5}", "--lambda", "3,2", "--negative-control",
    ]);
    assert_eq!(neg.status.code(), Some(0));
}

#[test]
fn verification_runs_pass() {
    for algebra in ["partition", "brauer"] {
        let out = cellstrat(&["verify-stratification", "--algebra", algebra, "--r", "3"]);
        assert_eq!(out.status.code(), Some(0), "{algebra} stratification");
        assert!(stdout(&out).contains("overall: PASS"));
    }
}

#[test]
fn cap_exceeded_exits_three() {
    let out = cellstrat(&["basis", "--r", "6", "--caps", "basis=100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let malformed = cellstrat(&["multiply", "--r", "2", "--x", "{1,2}", "--y", "{1,1'}{2,2'}"]);
    assert_eq!(malformed.status.code(), Some(2));
    let unknown = cellstrat(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));
    // δ = 0 is singular for the bottom partition idempotent
    let singular = cellstrat(&[
        "idempotent", "--algebra", "partition", "--r", "3", "--l", "0", "--delta", "0",
    ]);
    assert_eq!(singular.status.code(), Some(2));
}

#[test]
fn jobs_do_not_change_bytes() {
    let run = |jobs: &str| {
        let out = cellstrat(&[
            "decompose-all", "--json", "--r", "5", "--n", "2", "--l", "4",
            "--lambda", "2,2", "--jobs", jobs,
        ]);
        assert!(out.status.success());
        stdout(&out)
    };
    let one = run("1");
    let many = run("8");
    // --jobs is part of the embedded config, which is the only allowed
    // difference between the runs
    assert_eq!(
        one.replace("\"jobs\":1", "\"jobs\":N"),
        many.replace("\"jobs\":8", "\"jobs\":N")
    );
}

#[test]
fn partial_classes_lists_both_classes() {
    let out = cellstrat(&["partial-classes", "--r", "4", "--n", "1", "--l", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("L{1,2,3,4}"));
}
