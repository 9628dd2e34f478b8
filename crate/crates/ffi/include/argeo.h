#ifndef ARGEO_H
#define ARGEO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArgeoAttack {
  ARGEO_ATTACK_REBUT = 0,
  ARGEO_ATTACK_U_REBUT = 1,
  ARGEO_ATTACK_DLP_REBUT = 2,
} ArgeoAttack;

typedef enum ArgeoSemantics {
  ARGEO_SEMANTICS_GROUNDED = 0,
  ARGEO_SEMANTICS_COMPLETE = 1,
  ARGEO_SEMANTICS_PREFERRED = 2,
  ARGEO_SEMANTICS_STABLE = 3,
} ArgeoSemantics;

typedef enum ArgeoStatus {
  ARGEO_STATUS_OK = 0,
  // A required pointer was null.
  ARGEO_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not UTF-8, or an enum value was out of range.
  ARGEO_STATUS_INVALID_ARGUMENT = 2,
  // The program text or a literal did not parse.
  ARGEO_STATUS_PARSE = 3,
  // An engine limit or precondition failed.
  ARGEO_STATUS_ENGINE = 4,
  // A bug: the library panicked.
  ARGEO_STATUS_INTERNAL = 5,
} ArgeoStatus;

typedef enum ArgeoWarrantEngine {
  ARGEO_WARRANT_ENGINE_DELP = 0,
  ARGEO_WARRANT_ENGINE_DELP_GR = 1,
} ArgeoWarrantEngine;

// A parsed program. Opaque.
typedef struct ArgeoProgram ArgeoProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. Valid until
// the next call on the same thread.
const char *argeo_last_error(void);

// Library version; static, never freed.
const char *argeo_version(void);

// Parses `text` into a new program stored in `*out_program`.
//
// # Safety
// `text` must be a NUL-terminated string; `out_program` must be writable.
enum ArgeoStatus argeo_program_parse(const char *text, struct ArgeoProgram **out_program);

// # Safety
// `program` must come from [`argeo_program_parse`] and not be used again.
void argeo_program_free(struct ArgeoProgram *program);

// Caps the number of ASPIC+ arguments constructed for this program.
//
// # Safety
// `program` must be a live handle.
enum ArgeoStatus argeo_program_set_budget(struct ArgeoProgram *program, size_t budget);

// The program in normal form; free with [`argeo_string_free`].
//
// # Safety
// `program` must be a live handle; `out_text` writable.
enum ArgeoStatus argeo_program_print(const struct ArgeoProgram *program, char **out_text);

// Whether `goal` is warranted; `engine` is an [`ArgeoWarrantEngine`].
//
// # Safety
// `program` must be a live handle, `goal` NUL-terminated, `out_warranted` writable.
enum ArgeoStatus argeo_warrant(const struct ArgeoProgram *program,
                               const char *goal,
                               int32_t engine,
                               bool *out_warranted);

// Whether some ASPIC+ argument for `goal` is in every (`sceptical`) or
// some extension. `attack` and `semantics` are [`ArgeoAttack`] and
// [`ArgeoSemantics`] values.
//
// # Safety
// As for [`argeo_warrant`].
enum ArgeoStatus argeo_justified(const struct ArgeoProgram *program,
                                 const char *goal,
                                 int32_t attack,
                                 int32_t semantics,
                                 bool sceptical,
                                 bool *out_justified);

// Extensions as conclusion sets, one `{a, b}` per line; free with
// [`argeo_string_free`].
//
// # Safety
// `program` must be a live handle; `out_text` writable.
enum ArgeoStatus argeo_extensions(const struct ArgeoProgram *program,
                                  int32_t attack,
                                  int32_t semantics,
                                  char **out_text);

// The postulate table (tab-separated) for the grounded ASPIC+ engines and
// both DeLP engines; free with [`argeo_string_free`].
//
// # Safety
// `program` must be a live handle; `out_text` writable.
enum ArgeoStatus argeo_postulates(const struct ArgeoProgram *program, char **out_text);

// Number of DeLP arguments whose grounded warrant disagrees with grounded
// ASPIC+ justification under the pairing named by `attack`. Fails with
// [`ArgeoStatus::Engine`] on programs that are not simplified.
//
// # Safety
// `program` must be a live handle; `out_count` writable.
enum ArgeoStatus argeo_compare(const struct ArgeoProgram *program,
                               int32_t attack,
                               size_t *out_count);

// # Safety
// `s` must come from this library and not be used again.
void argeo_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARGEO_H */
