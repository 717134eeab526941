#ifndef POLYBOUND_H
#define POLYBOUND_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum PbStatus {
  PB_OK = 0,
  /*
   A required pointer argument was null.
   */
  PB_ERR_NULL = 1,
  PB_ERR_PARSE = 2,
  /*
   Objects from different semigroup handles were mixed.
   */
  PB_ERR_FOREIGN = 3,
  PB_ERR_INVALID = 4,
  /*
   A search or size guard was exceeded.
   */
  PB_ERR_GUARD = 5,
  PB_ERR_UTF8 = 6,
  PB_ERR_IO = 7,
  /*
   A Rust panic was caught at the boundary.
   */
  PB_ERR_PANIC = 8,
} PbStatus;

/*
 Opaque cover certificate, tied to the semigroup it was parsed against.
 */
typedef struct PbCover PbCover;

/*
 Opaque semigroup handle.
 */
typedef struct PbSemigroup PbSemigroup;

/*
 Outcome of [`pb_cover_verify`].
 */
typedef struct PbVerdict {
  /*
   1 when every window element is covered, else 0.
   */
  int32_t verified;
  /*
   1 when the check covered the whole (finite) semigroup.
   */
  int32_t exhaustive;
  /*
   First uncovered element when `verified` is 0.
   */
  uintptr_t counterexample;
} PbVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *pb_last_error_message(void);

/*
 Parse a semigroup expression such as `builtin:cyclic:6` or
 `product(builtin:zpm,cayley:c2.tbl)`.
 */
enum PbStatus pb_semigroup_parse(const char *spec, struct PbSemigroup **out);

void pb_semigroup_free(struct PbSemigroup *s);

/*
 Writes the order and `finite = true`, or `order = 0` and `finite = false`
 for countably infinite semigroups.
 */
enum PbStatus pb_semigroup_cardinality(const struct PbSemigroup *s, uintptr_t *order, bool *finite);

/*
 Product of two element indices.
 */
enum PbStatus pb_semigroup_mul(const struct PbSemigroup *s,
                               uintptr_t a,
                               uintptr_t b,
                               uintptr_t *out);

/*
 Parse cover text (`<polynomial> = <element>` per line) against a semigroup.
 */
enum PbStatus pb_cover_parse(const struct PbSemigroup *s, const char *text, struct PbCover **out);

void pb_cover_free(struct PbCover *c);

/*
 Check the cover on the first `window` elements (clamped to the order of
 finite semigroups). The cover must come from the same semigroup handle.
 */
enum PbStatus pb_cover_verify(const struct PbSemigroup *s,
                              const struct PbCover *c,
                              uintptr_t window,
                              struct PbVerdict *out);

/*
 Run a command-line invocation (`argv[0]` is the program name). Writes the
 process exit code and the combined report and diagnostics, which the
 caller releases with [`pb_string_free`].
 */
enum PbStatus pb_run_command(const char *const *argv,
                             uintptr_t argc,
                             int32_t *exit_code,
                             char **output);

void pb_string_free(char *s);

/*
 Null-terminated library version.
 */
const char *pb_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* POLYBOUND_H */
