//! Exercises the C ABI from Rust: every exported function, every status
//! code, and the ownership rules for returned strings.

use commitpay_ffi::{
    cp_game_free, cp_game_parse, cp_game_players, cp_game_to_json, cp_last_error, cp_reduce,
    cp_solve, cp_string_free, cp_verify_ic, cp_verify_witness, cp_version, CpGame, CpStatus,
};
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

const STEER: &str = include_str!("../../commitpay/tests/fixtures/steer.json");
const STEER_REPORT: &str = include_str!("../../commitpay/tests/fixtures/steer_mixed_report.json");
const K22: &str = include_str!("../../commitpay/tests/fixtures/k22.json");

/// Two follower types behind a single-typed leader; enough assignments to
/// trip a budget of one.
const FOLLOWER_TYPED: &str = r#"{
  "players": 2,
  "actions": [["a1", "a2"], ["b1", "b2"]],
  "types": [["t"], ["hi", "lo"]],
  "prior": [["1"], ["1/2", "1/2"]],
  "utilities": {
    "t|hi|a1|b1": ["2", "1"], "t|hi|a1|b2": ["0", "0"],
    "t|hi|a2|b1": ["0", "1"], "t|hi|a2|b2": ["1", "0"],
    "t|lo|a1|b1": ["2", "0"], "t|lo|a1|b2": ["0", "1"],
    "t|lo|a2|b1": ["0", "0"], "t|lo|a2|b2": ["1", "1"]
  }
}"#;

const PRICING: &str = r#"{
  "itemCount": 2,
  "support": [
    {"values": ["10", "0"], "probability": "1/2"},
    {"values": ["6", "6"], "probability": "1/2"}
  ]
}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = cp_last_error();
    if p.is_null() {
        None
    } else {
        Some(unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
    }
}

/// Copy a returned string into Rust and release the C allocation.
unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null(), "expected a string, got null");
    let text = CStr::from_ptr(p).to_str().unwrap().to_string();
    cp_string_free(p);
    text
}

unsafe fn parse(json: &str) -> *mut CpGame {
    let json = cstr(json);
    let mut game: *mut CpGame = ptr::null_mut();
    let status = cp_game_parse(json.as_ptr(), &mut game);
    assert_eq!(status, CpStatus::Ok, "parse failed: {:?}", last_error());
    assert!(!game.is_null());
    game
}

unsafe fn solve(game: *const CpGame, setting: &str, payments: bool, budget: u64) -> String {
    let setting = cstr(setting);
    let mut out: *mut c_char = ptr::null_mut();
    let status = cp_solve(game, setting.as_ptr(), payments, budget, &mut out);
    assert_eq!(status, CpStatus::Ok, "solve failed: {:?}", last_error());
    take_string(out)
}

#[test]
fn version_and_header_are_in_sync() {
    let version = unsafe { CStr::from_ptr(cp_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));

    let header_path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/commitpay.h");
    let header = std::fs::read_to_string(header_path).expect("generated header");
    assert!(header.contains("typedef struct CpGame CpGame;"), "opaque handle typedef");
    assert!(header.contains("CP_STATUS_OK = 0"));
    assert!(header.contains("CP_STATUS_NULL_ARGUMENT = 4"));
    for symbol in [
        "cp_version", "cp_last_error", "cp_game_parse", "cp_game_free", "cp_game_players",
        "cp_game_to_json", "cp_solve", "cp_verify_ic", "cp_reduce", "cp_verify_witness",
        "cp_string_free",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}

#[test]
fn parse_solve_and_serialize_round_trip() {
    unsafe {
        let game = parse(STEER);
        assert_eq!(cp_game_players(game), 2);

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(cp_game_to_json(game, &mut out), CpStatus::Ok);
        let json = take_string(out);
        assert!(json.contains("\"players\": 2"));
        assert!(json.contains("\"Middle\""));

        // Reparsing the canonical form describes the same game.
        let again = parse(&json);
        assert_eq!(cp_game_players(again), 2);
        cp_game_free(again);

        let report = solve(game, "2p-mixed", true, 0);
        assert_eq!(report, STEER_REPORT, "solve output matches the frozen report");
        assert!(last_error().is_none(), "success clears the error slot");

        cp_game_free(game);
    }
}

#[test]
fn payments_toggle_changes_the_program() {
    unsafe {
        let game = parse(STEER);
        let with = solve(game, "2p-mixed", true, 0);
        let without = solve(game, "2p-mixed", false, 0);
        assert!(with.contains("\"value\": \"1/3\""));
        assert!(without.contains("\"value\": \"0\""));
        cp_game_free(game);
    }
}

#[test]
fn malformed_inputs_report_validation() {
    unsafe {
        let garbage = cstr("this is not a game");
        let mut game: *mut CpGame = ptr::null_mut();
        assert_eq!(cp_game_parse(garbage.as_ptr(), &mut game), CpStatus::Validation);
        assert!(game.is_null());
        assert!(!last_error().unwrap().is_empty());

        let parsed = parse(STEER);
        let setting = cstr("warp-drive");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_solve(parsed, setting.as_ptr(), true, 0, &mut out),
            CpStatus::Validation
        );
        assert!(out.is_null());
        assert!(last_error().unwrap().contains("unknown setting"));

        // A typed setting on an untyped game is also a validation failure.
        let typed = cstr("bayes-follower-exact");
        assert_eq!(
            cp_solve(parsed, typed.as_ptr(), true, 0, &mut out),
            CpStatus::Validation
        );
        cp_game_free(parsed);

        let non_utf8 = CString::new(vec![0xffu8, 0xfe]).unwrap();
        let mut game: *mut CpGame = ptr::null_mut();
        assert_eq!(cp_game_parse(non_utf8.as_ptr(), &mut game), CpStatus::Validation);
        assert!(last_error().unwrap().contains("UTF-8"));
    }
}

#[test]
fn null_arguments_are_rejected_not_crashed() {
    unsafe {
        let mut game: *mut CpGame = ptr::null_mut();
        assert_eq!(cp_game_parse(ptr::null(), &mut game), CpStatus::NullArgument);
        assert!(game.is_null());

        let json = cstr(STEER);
        assert_eq!(cp_game_parse(json.as_ptr(), ptr::null_mut()), CpStatus::NullArgument);

        let setting = cstr("2p-mixed");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_solve(ptr::null(), setting.as_ptr(), true, 0, &mut out),
            CpStatus::NullArgument
        );

        let parsed = parse(STEER);
        assert_eq!(
            cp_solve(parsed, ptr::null(), true, 0, &mut out),
            CpStatus::NullArgument
        );
        assert_eq!(cp_verify_ic(parsed, ptr::null(), &mut out), CpStatus::NullArgument);
        cp_game_free(parsed);

        assert_eq!(cp_game_players(ptr::null()), -1);

        // Frees tolerate null.
        cp_game_free(ptr::null_mut());
        cp_string_free(ptr::null_mut());
    }
}

#[test]
fn budget_overruns_surface_as_budget_status() {
    unsafe {
        let game = parse(FOLLOWER_TYPED);
        let setting = cstr("bayes-follower-exact");

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_solve(game, setting.as_ptr(), true, 1, &mut out),
            CpStatus::Budget
        );
        assert!(out.is_null());
        assert!(last_error().unwrap().contains("exceeds limit"));

        // Budget zero means the default, which is plenty here.
        let report = solve(game, "bayes-follower-exact", true, 0);
        assert!(report.contains("\"setting\": \"bayes-follower-exact\""));
        cp_game_free(game);
    }
}

#[test]
fn verify_ic_accepts_real_reports_and_rejects_tampering() {
    unsafe {
        let game = parse(STEER);
        let report = solve(game, "2p-mixed", true, 0);

        let good = cstr(&report);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(cp_verify_ic(game, good.as_ptr(), &mut out), CpStatus::Ok);
        let verdict = take_string(out);
        assert!(verdict.contains("\"result\": \"pass\""));

        let tampered = report.replace("\"value\": \"1/3\"", "\"value\": \"2/3\"");
        assert_ne!(tampered, report, "the tamper must hit the value field");
        let bad = cstr(&tampered);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(cp_verify_ic(game, bad.as_ptr(), &mut out), CpStatus::Failed);
        let verdict = take_string(out);
        assert!(verdict.contains("\"result\": \"fail\""));
        assert!(last_error().is_some(), "failures leave a message behind");

        // A report that is not even JSON is a validation error, not Failed.
        let noise = cstr("{");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(cp_verify_ic(game, noise.as_ptr(), &mut out), CpStatus::Validation);

        cp_game_free(game);
    }
}

#[test]
fn reduce_solve_verify_witness_pipeline() {
    unsafe {
        let kind = cstr("pricing");
        let source = cstr(PRICING);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_reduce(kind.as_ptr(), source.as_ptr(), &mut out),
            CpStatus::Ok
        );
        let game_json = take_string(out);
        assert!(game_json.contains("\"reduction\": \"pricing\""));

        let game = parse(&game_json);
        let report = solve(game, "bayes-follower-exact", true, 0);
        assert!(report.contains("\"value\": \"8\""));

        let report_c = cstr(&report);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_verify_witness(kind.as_ptr(), source.as_ptr(), report_c.as_ptr(), &mut out),
            CpStatus::Ok
        );
        let verdict = take_string(out);
        assert!(verdict.contains("\"result\": \"consistent\""));

        let tampered = report.replace("\"value\": \"8\"", "\"value\": \"9\"");
        assert_ne!(tampered, report);
        let tampered_c = cstr(&tampered);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_verify_witness(kind.as_ptr(), source.as_ptr(), tampered_c.as_ptr(), &mut out),
            CpStatus::Failed
        );
        let verdict = take_string(out);
        assert!(verdict.contains("\"result\": \"violation\""));

        cp_game_free(game);
    }
}

#[test]
fn reductions_cover_their_kinds() {
    unsafe {
        let kind = cstr("bcbs");
        let source = cstr(K22);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_reduce(kind.as_ptr(), source.as_ptr(), &mut out),
            CpStatus::Ok
        );
        let game_json = take_string(out);
        let game = parse(&game_json);
        assert_eq!(cp_game_players(game), 3);
        cp_game_free(game);

        let bogus = cstr("warp");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_reduce(bogus.as_ptr(), source.as_ptr(), &mut out),
            CpStatus::Validation
        );
        assert!(last_error().unwrap().contains("unknown reduction"));

        // The balanced-cover reduction builds games but offers no witness:
        // even a well-formed report is turned away by kind.
        let bvc = cstr("bvc");
        let cycle = cstr(
            r#"{"vertices": ["v1", "v2", "v3", "v4"],
                "edges": [["v1", "v2"], ["v2", "v3"], ["v3", "v4"], ["v4", "v1"]]}"#,
        );
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_reduce(bvc.as_ptr(), cycle.as_ptr(), &mut out),
            CpStatus::Ok
        );
        cp_string_free(out);
        let steer = parse(STEER);
        let report = solve(steer, "2p-pure", true, 0);
        cp_game_free(steer);
        let report = cstr(&report);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            cp_verify_witness(bvc.as_ptr(), cycle.as_ptr(), report.as_ptr(), &mut out),
            CpStatus::Validation
        );
        assert!(last_error().unwrap().contains("no instance-level witness"));
    }
}
