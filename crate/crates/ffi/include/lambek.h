#ifndef LAMBEK_H
#define LAMBEK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum LbStatus {
  LB_STATUS_OK = 0,
  /**
   * A declaration was rejected by the checker.
   */
  LB_STATUS_REJECTED = 1,
  LB_STATUS_PARSE_ERROR = 2,
  LB_STATUS_NULL_ARGUMENT = 3,
  LB_STATUS_INVALID_UTF8 = 4,
  LB_STATUS_UNKNOWN_DECLARATION = 5,
  LB_STATUS_OUT_OF_FUEL = 6,
  LB_STATUS_EVAL_ERROR = 7,
  LB_STATUS_UNSUPPORTED = 8,
  /**
   * A Rust panic was caught at the boundary.
   */
  LB_STATUS_INTERNAL = 9,
} LbStatus;

typedef enum LbMode {
  LB_MODE_ORDERED = 0,
  LB_MODE_LINEAR = 1,
  LB_MODE_UNRESTRICTED = 2,
} LbMode;

/**
 * A parsed program.
 */
typedef struct LbProgram LbProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `source` into a new program handle stored in `*out_program`.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out_program` a valid
 * pointer. The handle must be released with `lb_program_free`.
 */
enum LbStatus lb_program_parse(const char *source, struct LbProgram **out_program);

/**
 * Releases a program handle. Null is ignored.
 *
 * # Safety
 * `program` must come from `lb_program_parse` and not be used afterwards.
 */
void lb_program_free(struct LbProgram *program);

/**
 * Number of declarations in the program, or 0 for a null handle.
 *
 * # Safety
 * `program` must be null or a live handle.
 */
size_t lb_program_declaration_count(const struct LbProgram *program);

/**
 * Checks every declaration. Returns `LB_STATUS_OK` when all are accepted and
 * `LB_STATUS_REJECTED` otherwise; `*out_rejected` receives the number of
 * rejected declarations.
 *
 * # Safety
 * `program` must be a live handle and `out_rejected` a valid pointer.
 */
enum LbStatus lb_program_check(const struct LbProgram *program,
                               enum LbMode mode,
                               size_t *out_rejected);

/**
 * Evaluates declaration `name` with at most `fuel` steps and stores its
 * printed value in `*out_value`, to be freed with `lb_string_free`. The
 * declaration is checked first.
 *
 * # Safety
 * `program` must be a live handle, `name` a NUL-terminated string and
 * `out_value` a valid pointer.
 */
enum LbStatus lb_program_eval(const struct LbProgram *program,
                              const char *name,
                              enum LbMode mode,
                              uint64_t fuel,
                              char **out_value);

/**
 * Counts the normal inhabitants of the closed type `type_text` under the
 * default search budget.
 *
 * # Safety
 * `type_text` must be a NUL-terminated string; the out pointers must be
 * valid.
 */
enum LbStatus lb_count_inhabitants(const char *type_text,
                                   enum LbMode mode,
                                   size_t *out_count,
                                   bool *out_truncated);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *lb_last_error(void);

/**
 * Frees a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void lb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBEK_H */
