#ifndef COMMITPAY_H
#define COMMITPAY_H

/* Generated by cbindgen from the commitpay-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Mirrors the CLI exit codes, with an extra
 * code for null arguments.
 */
typedef enum CpStatus {
  /**
   * Success; for verification calls, the check passed.
   */
  CP_STATUS_OK = 0,
  /**
   * The operation ran but the answer is negative (failed verification),
   * or an internal invariant broke.
   */
  CP_STATUS_FAILED = 1,
  /**
   * Malformed input: bad JSON, bad game, unknown setting.
   */
  CP_STATUS_VALIDATION = 2,
  /**
   * The enumeration budget or a size limit was exceeded.
   */
  CP_STATUS_BUDGET = 3,
  /**
   * A required pointer argument was null.
   */
  CP_STATUS_NULL_ARGUMENT = 4,
} CpStatus;

/**
 * Opaque parsed game handle.
 */
typedef struct CpGame CpGame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; never freed.
 */
const char *cp_version(void);

/**
 * Message for this thread's most recent failure, or null after a success.
 * Valid until the next call on the same thread; do not free.
 */
const char *cp_last_error(void);

/**
 * Parse a game document (JSON text) into a handle. On success writes the
 * handle to `out_game`; release it with [`cp_game_free`].
 */
enum CpStatus cp_game_parse(const char *json, struct CpGame **out_game);

/**
 * Release a handle from [`cp_game_parse`]. Null is ignored.
 */
void cp_game_free(struct CpGame *game);

/**
 * Number of players in the parsed game, or -1 on a null handle.
 */
int32_t cp_game_players(const struct CpGame *game);

/**
 * Canonical serialization of the parsed game. Free with
 * [`cp_string_free`].
 */
enum CpStatus cp_game_to_json(const struct CpGame *game, char **out_json);

/**
 * Solve a game under a named setting (the same tokens as the command-line
 * tool, e.g. "2p-mixed" or "bayes-follower-exact"). `payments` toggles the
 * transfer instrument; `budget` bounds the exact exponential settings
 * (pass 0 for the default). Writes the report JSON to `out_json`.
 */
enum CpStatus cp_solve(const struct CpGame *game,
                       const char *setting,
                       bool payments,
                       uint64_t budget,
                       char **out_json);

/**
 * Re-check a report (JSON text) against the game: obedience slacks plus an
 * exact value replay. Returns Ok when the report verifies, Failed when it
 * is interpretable but wrong; the verdict JSON is written either way.
 */
enum CpStatus cp_verify_ic(const struct CpGame *game, const char *report_json, char **out_json);

/**
 * Build a game from a combinatorial instance. `kind` is one of "bcbs",
 * "bvc", "vc-bayes", or "pricing"; `source_json` is the instance text.
 * Writes the game document JSON to `out_json`.
 */
enum CpStatus cp_reduce(const char *kind, const char *source_json, char **out_json);

/**
 * Check a report against its combinatorial source instance. Returns Ok on
 * a consistent witness, Failed on a violation.
 */
enum CpStatus cp_verify_witness(const char *kind,
                                const char *source_json,
                                const char *report_json,
                                char **out_json);

/**
 * Release a string returned by this library. Null is ignored.
 */
void cp_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COMMITPAY_H */
