//! End-to-end tests of the installed binary: exit codes, byte-stable
//! stdout, stream separation, and the documented command grammar.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_commitpay"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().unwrap()
}

const STEER: &str = "tests/fixtures/steer.json";

#[test]
fn solve_emits_the_frozen_report() {
    let output = run(&["solve", "--setting", "2p-mixed", STEER]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let expected = std::fs::read_to_string("tests/fixtures/steer_mixed_report.json").unwrap();
    assert_eq!(stdout(&output), expected);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let first = run(&["solve", "--setting", "sig-mixed", STEER]);
    let second = run(&["solve", "--setting", "sig-mixed", STEER]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn no_payments_flag_restricts_the_program() {
    let output = run(&["solve", "--setting", "2p-mixed", "--no-payments", STEER]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).contains("\"value\": \"0\""));
}

#[test]
fn dump_lp_goes_to_stderr_only() {
    let quiet = run(&["solve", "--setting", "2p-mixed", STEER]);
    let loud = run(&["solve", "--setting", "2p-mixed", "--dump-lp", STEER]);
    assert_eq!(code(&loud), 0);
    assert_eq!(quiet.stdout, loud.stdout);
    assert!(quiet.stderr.is_empty());
    assert!(!loud.stderr.is_empty());
}

#[test]
fn validation_failures_exit_2() {
    assert_eq!(code(&run(&["solve", "--setting", "2p-mixed", "/no/such/file.json"])), 2);
    assert_eq!(code(&run(&["solve", "--setting", "warp-drive", STEER])), 2);
    assert_eq!(code(&run(&["solve", "--setting", "bayes-follower-exact", STEER])), 2);
    let output = run(&["solve", "--setting", "warp-drive", STEER]);
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown setting"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["oracle", STEER])), 2);
    assert_eq!(code(&run(&["generate"])), 2);
    assert_eq!(code(&run(&["verify", "--witness", STEER, STEER])), 2);
}

#[test]
fn busted_budgets_exit_3() {
    let output = run(&[
        "approx",
        "--setting",
        "single-commit",
        "--step",
        "1/64",
        "--cap",
        "4",
        "tests/fixtures/relay.json",
    ]);
    assert_eq!(code(&output), 3);
}

#[test]
fn verify_ic_accepts_and_rejects() {
    let ok = run(&["verify", "--ic", STEER, "tests/fixtures/steer_mixed_report.json"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("\"result\": \"pass\""));

    let dir = tempfile::tempdir().unwrap();
    let tampered = dir.path().join("tampered.json");
    let report = std::fs::read_to_string("tests/fixtures/steer_mixed_report.json").unwrap();
    std::fs::write(&tampered, report.replace("\"value\": \"1/3\"", "\"value\": \"2/3\"")).unwrap();
    let bad = run(&["verify", "--ic", STEER, tampered.to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("\"result\": \"fail\""));
}

#[test]
fn reduction_pipeline_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let game = dir.path().join("game.json");
    let report = dir.path().join("report.json");

    let generated = run(&[
        "generate",
        "--reduction",
        "bcbs",
        "tests/fixtures/k22.json",
        "-o",
        game.to_str().unwrap(),
    ]);
    assert_eq!(code(&generated), 0);
    assert!(generated.stdout.is_empty(), "-o leaves stdout empty");
    let text = std::fs::read_to_string(&game).unwrap();
    assert!(text.contains("\"reduction\": \"bcbs\""));

    let solved = bin()
        .args(["approx", "--setting", "single-commit", "--step", "1", "--cap", "0"])
        .arg(&game)
        .output()
        .unwrap();
    assert_eq!(code(&solved), 0);
    std::fs::write(&report, &solved.stdout).unwrap();

    let verified = run(&[
        "verify",
        "--witness",
        "--reduction",
        "bcbs",
        "tests/fixtures/k22.json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&verified), 0, "{}", String::from_utf8_lossy(&verified.stderr));
    assert!(stdout(&verified).contains("\"result\": \"consistent\""));

    let wrong = run(&[
        "verify",
        "--witness",
        "--reduction",
        "vc-bayes",
        "tests/fixtures/k22.json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&wrong), 2, "mismatched source instance is a validation error");
}

#[test]
fn random_generation_is_seeded() {
    let a = run(&["generate", "--random", "2x3", "--seed", "9"]);
    let b = run(&["generate", "--random", "2x3", "--seed", "9"]);
    let c = run(&["generate", "--random", "2x3", "--seed", "10"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(code(&run(&["generate", "--random", "5x0"])), 2);
    assert_eq!(code(&run(&["generate", "--random", "2x2", "--reduction", "bcbs"])), 2);
}

#[test]
fn generated_games_solve_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let game = dir.path().join("game.json");
    let report = dir.path().join("report.json");
    let generated = run(&[
        "generate",
        "--random",
        "3x3",
        "--seed",
        "77",
        "-o",
        game.to_str().unwrap(),
    ]);
    assert_eq!(code(&generated), 0);
    let solved =
        bin().args(["solve", "--setting", "sig-mixed"]).arg(&game).output().unwrap();
    assert_eq!(code(&solved), 0);
    std::fs::write(&report, &solved.stdout).unwrap();
    let verified = bin()
        .args(["verify", "--ic"])
        .arg(&game)
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(code(&verified), 0, "{}", String::from_utf8_lossy(&verified.stderr));
}

#[test]
fn nash_oracle_reports_the_unique_equilibrium() {
    let output = run(&["oracle", "--nash", "tests/fixtures/pennies.json"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let equilibria = parsed["equilibria"].as_array().unwrap();
    assert_eq!(equilibria.len(), 1);
    assert_eq!(equilibria[0]["payoffs"][0], "0");
    assert_eq!(equilibria[0]["strategies"][0]["Heads"], "1/2");
}

#[test]
fn game_files_round_trip_through_generate() {
    let first = run(&["generate", "--random", "2x2x2", "--seed", "5"]);
    assert_eq!(code(&first), 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("copy.json");
    std::fs::write(&path, &first.stdout).unwrap();
    let solved = bin()
        .args(["solve", "--setting", "3p-seq-pure"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&solved), 0, "{}", String::from_utf8_lossy(&solved.stderr));
}
