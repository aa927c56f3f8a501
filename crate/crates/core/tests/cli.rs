mod common;

use std::process::{Command, Output};

use common::example_path;
use supra::cli::{EXIT_INPUT_ERROR, EXIT_LIMIT, EXIT_REPLAY_MISMATCH, EXIT_SATURATED, EXIT_SUCCESS};

fn supra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supra")).args(args).output().unwrap()
}

fn spec(name: &str) -> String {
    example_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn success_prints_the_program_and_verifies_it() {
    let o = supra(&[&spec("workshop.spec"), "--verify"]);
    assert_eq!(o.status.code(), Some(EXIT_SUCCESS), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "ite(x = fri, vamp, paar)");
    assert!(stderr(&o).contains("verified on all models up to size 3"));
}

#[test]
fn tkbo_also_succeeds() {
    let o = supra(&[&spec("workshop.spec"), "--ordering", "tkbo"]);
    assert_eq!(o.status.code(), Some(EXIT_SUCCESS), "{}", stderr(&o));
}

/// Selecting negative literals first is not complete for synthesis: the
/// run saturates without a program.
#[test]
fn negative_selection_gets_stuck_on_workshop() {
    let o = supra(&[&spec("workshop.spec"), "--selection", "negative"]);
    assert_eq!(o.status.code(), Some(EXIT_SATURATED), "{}", stderr(&o));
}

#[test]
fn saturation_without_abstraction_is_reported() {
    let o = supra(&[&spec("abs.spec"), "--no-abs"]);
    assert_eq!(o.status.code(), Some(EXIT_SATURATED));
    assert!(stderr(&o).contains("saturated"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn limits_are_reported() {
    let o = supra(&[&spec("capital3.spec"), "--max-iterations", "5"]);
    assert_eq!(o.status.code(), Some(EXIT_LIMIT));
    assert!(stderr(&o).contains("iteration limit"));
}

#[test]
fn bad_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "(sorts s)\n(output (y t))\n").unwrap();
    let o = supra(&[bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT_ERROR));
    assert!(stderr(&o).contains("2:"), "{}", stderr(&o));
    for args in [vec!["/nonexistent.spec"], vec![], vec!["--pick-ratio", "0:0", "x.spec"]] {
        assert_eq!(supra(&args).status.code(), Some(EXIT_INPUT_ERROR), "{args:?}");
    }
}

#[test]
fn traces_replay_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("abs.jsonl");
    let trace = trace.to_str().unwrap();
    assert_eq!(supra(&[&spec("abs.spec"), "--trace", trace]).status.code(), Some(EXIT_SUCCESS));
    let o = supra(&["replay", trace, "--verify", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_SUCCESS), "{}", stderr(&o));
    assert!(stdout(&o).contains("ite(d = c, b, a)"));
    let text = std::fs::read_to_string(trace).unwrap();
    let tampered = text.replacen("\"premises\":[", "\"premises\":[0,", 1);
    assert_ne!(tampered, text);
    std::fs::write(trace, tampered).unwrap();
    let o = supra(&["replay", trace]);
    assert_eq!(o.status.code(), Some(EXIT_REPLAY_MISMATCH));
    assert!(stderr(&o).contains("replay failed"));
}
