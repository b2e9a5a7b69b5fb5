//! C ABI for the commitpay solvers.
//!
//! Games are opaque handles created from JSON text; every other exchange is
//! a JSON string allocated by this library and released with
//! [`cp_string_free`]. All functions are panic-safe and report through
//! [`CpStatus`]; the last failure's message is retrievable per thread via
//! [`cp_last_error`].

use commitpay::cli::{dispatch_solve, verify_ic};
use commitpay::io::{self, GameDoc};
use commitpay::reductions;
use commitpay::report::ReportOut;
use commitpay::solvers::SolveOptions;
use commitpay::Error;
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call. Mirrors the CLI exit codes, with an extra
/// code for null arguments.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CpStatus {
    /// Success; for verification calls, the check passed.
    Ok = 0,
    /// The operation ran but the answer is negative (failed verification),
    /// or an internal invariant broke.
    Failed = 1,
    /// Malformed input: bad JSON, bad game, unknown setting.
    Validation = 2,
    /// The enumeration budget or a size limit was exceeded.
    Budget = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
}

/// Opaque parsed game handle.
pub struct CpGame {
    doc: GameDoc,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &Error) -> CpStatus {
    match e {
        Error::Validation { .. } | Error::Io(_) | Error::Json(_) => CpStatus::Validation,
        Error::Budget { .. } => CpStatus::Budget,
        Error::Internal(_) => CpStatus::Failed,
    }
}

fn fail(e: &Error) -> CpStatus {
    set_error(&e.to_string());
    status_of(e)
}

fn guarded(body: impl FnOnce() -> CpStatus) -> CpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            CpStatus::Failed
        }
    }
}

unsafe fn required_str<'a>(ptr: *const c_char) -> Result<&'a str, CpStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(CpStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        CpStatus::Validation
    })
}

fn emit(out: *mut *mut c_char, text: String) -> CpStatus {
    let Ok(owned) = CString::new(text) else {
        set_error("output contained an interior NUL byte");
        return CpStatus::Failed;
    };
    unsafe { *out = owned.into_raw() };
    CpStatus::Ok
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for this thread's most recent failure, or null after a success.
/// Valid until the next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn cp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map(|s| s.as_ptr()).unwrap_or(std::ptr::null())
    })
}

/// Parse a game document (JSON text) into a handle. On success writes the
/// handle to `out_game`; release it with [`cp_game_free`].
#[no_mangle]
pub unsafe extern "C" fn cp_game_parse(
    json: *const c_char,
    out_game: *mut *mut CpGame,
) -> CpStatus {
    guarded(|| {
        if out_game.is_null() {
            set_error("null output argument");
            return CpStatus::NullArgument;
        }
        let text = match required_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match io::parse_game_str(text) {
            Ok(doc) => {
                clear_error();
                *out_game = Box::into_raw(Box::new(CpGame { doc }));
                CpStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a handle from [`cp_game_parse`]. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cp_game_free(game: *mut CpGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of players in the parsed game, or -1 on a null handle.
#[no_mangle]
pub unsafe extern "C" fn cp_game_players(game: *const CpGame) -> i32 {
    if game.is_null() {
        return -1;
    }
    (*game).doc.players() as i32
}

/// Canonical serialization of the parsed game. Free with
/// [`cp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cp_game_to_json(
    game: *const CpGame,
    out_json: *mut *mut c_char,
) -> CpStatus {
    guarded(|| {
        if game.is_null() || out_json.is_null() {
            set_error("null argument");
            return CpStatus::NullArgument;
        }
        clear_error();
        emit(out_json, io::to_canonical_json(&io::game_to_file(&(*game).doc)))
    })
}

/// Solve a game under a named setting (the same tokens as the command-line
/// tool, e.g. "2p-mixed" or "bayes-follower-exact"). `payments` toggles the
/// transfer instrument; `budget` bounds the exact exponential settings
/// (pass 0 for the default). Writes the report JSON to `out_json`.
#[no_mangle]
pub unsafe extern "C" fn cp_solve(
    game: *const CpGame,
    setting: *const c_char,
    payments: bool,
    budget: u64,
    out_json: *mut *mut c_char,
) -> CpStatus {
    guarded(|| {
        if game.is_null() || out_json.is_null() {
            set_error("null argument");
            return CpStatus::NullArgument;
        }
        let setting = match required_str(setting) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let budget = if budget == 0 {
            commitpay::solvers::hard::DEFAULT_BUDGET
        } else {
            budget as u128
        };
        let opts = SolveOptions { payments, dump_lps: false };
        match dispatch_solve(setting, &(*game).doc, budget, &opts) {
            Ok(solved) => {
                clear_error();
                emit(out_json, io::to_canonical_json(&solved.report))
            }
            Err(e) => fail(&e),
        }
    })
}

/// Re-check a report (JSON text) against the game: obedience slacks plus an
/// exact value replay. Returns Ok when the report verifies, Failed when it
/// is interpretable but wrong; the verdict JSON is written either way.
#[no_mangle]
pub unsafe extern "C" fn cp_verify_ic(
    game: *const CpGame,
    report_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CpStatus {
    guarded(|| {
        if game.is_null() || out_json.is_null() {
            set_error("null argument");
            return CpStatus::NullArgument;
        }
        let text = match required_str(report_json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let report: ReportOut = match serde_json::from_str(text) {
            Ok(r) => r,
            Err(e) => return fail(&Error::from(e)),
        };
        match verify_ic(&(*game).doc, &report) {
            Ok(verdict) => {
                let passed = verdict.result == "pass";
                let status = if passed {
                    clear_error();
                    CpStatus::Ok
                } else {
                    set_error(verdict.detail.as_deref().unwrap_or("verification failed"));
                    CpStatus::Failed
                };
                let emitted = emit(out_json, io::to_canonical_json(&verdict));
                if emitted == CpStatus::Ok {
                    status
                } else {
                    emitted
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Build a game from a combinatorial instance. `kind` is one of "bcbs",
/// "bvc", "vc-bayes", or "pricing"; `source_json` is the instance text.
/// Writes the game document JSON to `out_json`.
#[no_mangle]
pub unsafe extern "C" fn cp_reduce(
    kind: *const c_char,
    source_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CpStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("null output argument");
            return CpStatus::NullArgument;
        }
        let kind = match required_str(kind) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let source = match required_str(source_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match reductions::reduce(kind, source) {
            Ok(doc) => {
                clear_error();
                emit(out_json, io::to_canonical_json(&io::game_to_file(&doc)))
            }
            Err(e) => fail(&e),
        }
    })
}

/// Check a report against its combinatorial source instance. Returns Ok on
/// a consistent witness, Failed on a violation.
#[no_mangle]
pub unsafe extern "C" fn cp_verify_witness(
    kind: *const c_char,
    source_json: *const c_char,
    report_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CpStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("null output argument");
            return CpStatus::NullArgument;
        }
        let kind = match required_str(kind) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let source = match required_str(source_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let report_text = match required_str(report_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let report: ReportOut = match serde_json::from_str(report_text) {
            Ok(r) => r,
            Err(e) => return fail(&Error::from(e)),
        };
        match reductions::verify_witness(kind, source, &report) {
            Ok(verdict) => {
                let consistent = verdict.result == reductions::RESULT_CONSISTENT;
                let status = if consistent {
                    clear_error();
                    CpStatus::Ok
                } else {
                    set_error(verdict.detail.as_deref().unwrap_or("witness violation"));
                    CpStatus::Failed
                };
                let emitted = emit(out_json, io::to_canonical_json(&verdict));
                if emitted == CpStatus::Ok {
                    status
                } else {
                    emitted
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
