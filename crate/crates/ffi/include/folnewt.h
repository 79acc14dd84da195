#ifndef FOLNEWT_H
#define FOLNEWT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum FolnewtCommand {
  FOLNEWT_COMMAND_POLYHEDRA = 0,
  FOLNEWT_COMMAND_LOGSING = 1,
  FOLNEWT_COMMAND_CHECK_NND = 2,
  FOLNEWT_COMMAND_DESING = 3,
  FOLNEWT_COMMAND_EQUIV = 4,
  FOLNEWT_COMMAND_VALIDATE = 5,
} FolnewtCommand;

typedef enum FolnewtRoute {
  FOLNEWT_ROUTE_DIRECT = 0,
  FOLNEWT_ROUTE_THEOREM = 1,
} FolnewtRoute;

/**
 * Status codes. Non-negative values mirror the CLI exit codes.
 */
typedef enum FolnewtStatus {
  /**
   * Definitive positive answer (non-degenerate, logSing empty, ...).
   */
  FOLNEWT_STATUS_OK = 0,
  /**
   * Definitive negative answer (degenerate, logSing nonempty, ...).
   */
  FOLNEWT_STATUS_NEGATIVE = 1,
  /**
   * Fuel ran out before an answer was reached.
   */
  FOLNEWT_STATUS_UNDETERMINED = 2,
  /**
   * The two deciders disagreed.
   */
  FOLNEWT_STATUS_DISAGREE = 70,
  FOLNEWT_STATUS_NULL_ARGUMENT = -1,
  FOLNEWT_STATUS_INVALID_UTF8 = -2,
  FOLNEWT_STATUS_INVALID_INPUT = -3,
  FOLNEWT_STATUS_INVALID_ARGUMENT = -4,
  FOLNEWT_STATUS_PANIC = -5,
} FolnewtStatus;

typedef enum FolnewtStrategy {
  FOLNEWT_STRATEGY_DEEPEST_FIRST = 0,
  FOLNEWT_STRATEGY_LEX_FIRST = 1,
  FOLNEWT_STRATEGY_WIDEST_POLYHEDRON = 2,
  FOLNEWT_STRATEGY_SHALLOWEST_FIRST = 3,
} FolnewtStrategy;

/**
 * A loaded foliated space.
 */
typedef struct FolnewtSpace FolnewtSpace;

/**
 * Resource limits; obtain defaults from `folnewt_options_default`.
 */
typedef struct FolnewtOptions {
  uint64_t fuel_spairs;
  uintptr_t fuel_terms;
  uintptr_t fuel_blowups;
  enum FolnewtStrategy strategy;
} FolnewtOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct FolnewtOptions folnewt_options_default(void);

/**
 * Library version as a static string.
 */
const char *folnewt_version(void);

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next call into the library on this thread.
 */
const char *folnewt_last_error(void);

/**
 * Parses and validates a space document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FolnewtStatus folnewt_space_from_json(const char *json, struct FolnewtSpace **out);

/**
 * # Safety
 * `space` must come from `folnewt_space_from_json` and not be freed yet;
 * NULL is ignored.
 */
void folnewt_space_free(struct FolnewtSpace *space);

/**
 * Number of divisor variables of the root chart.
 *
 * # Safety
 * `space` must be a live handle or NULL.
 */
uintptr_t folnewt_space_divisor_len(const struct FolnewtSpace *space);

/**
 * Decides Newton non-degeneracy by one route: `Ok` for non-degenerate,
 * `Negative` for degenerate, `Undetermined` when fuel runs out.
 *
 * # Safety
 * `space` must be a live handle; `options` may be NULL for defaults.
 */
enum FolnewtStatus folnewt_check_nnd(const struct FolnewtSpace *space,
                                     enum FolnewtRoute route,
                                     const struct FolnewtOptions *options);

/**
 * Runs a CLI command on the space and hands back its JSON report in
 * `report` (may be NULL if the report is not wanted). The status mirrors
 * the command's exit code.
 *
 * # Safety
 * `space` must be a live handle; `options` may be NULL; `report`, if not
 * NULL, must be writable.
 */
enum FolnewtStatus folnewt_run(const struct FolnewtSpace *space,
                               enum FolnewtCommand command,
                               const struct FolnewtOptions *options,
                               char **report);

/**
 * # Safety
 * `s` must come from this library and not be freed yet; NULL is ignored.
 */
void folnewt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLNEWT_H */
