/* C ABI for the matfib matrix-fibring library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum MatfibStatus {
  // The call succeeded and every out-parameter is written.
  MATFIB_STATUS_OK = 0,
  // A required pointer argument was null.
  MATFIB_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  MATFIB_STATUS_INVALID_UTF8 = 2,
  // A spec, formula, or sequent failed to parse.
  MATFIB_STATUS_PARSE_ERROR = 3,
  // Inputs were well-formed but do not fit together (unknown builtin
  // name, mismatched matrices, invalid pair).
  MATFIB_STATUS_INVALID_INPUT = 4,
  // Evaluation rejected the inputs (unknown connective or value).
  MATFIB_STATUS_EVAL_ERROR = 5,
  // The library panicked; treat affected handles as poisoned.
  MATFIB_STATUS_INTERNAL_ERROR = 6,
} MatfibStatus;

// Opaque handle to a finite logical matrix (a component or a fibring).
typedef struct MatfibMatrix MatfibMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static NUL-terminated string. Do not free.
const char *matfib_version(void);

// Creates a matrix from a builtin name (e.g. "CPLand", "P1", "P^2").
//
// # Safety
// `name` must be a NUL-terminated string and `out` a writable pointer.
enum MatfibStatus matfib_matrix_builtin(const char *name, struct MatfibMatrix **out);

// Creates a matrix from spec text: either a single matrix block, or two
// matrix blocks and a pair block, in which case the constructed fibred
// matrix is returned.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum MatfibStatus matfib_matrix_from_spec(const char *text, struct MatfibMatrix **out);

// Releases a matrix handle. Null is ignored.
//
// # Safety
// `matrix` must be null or a live handle from this library; the handle
// must not be used afterwards.
void matfib_matrix_free(struct MatfibMatrix *matrix);

// The matrix's name as a fresh string, or null on a null handle.
//
// # Safety
// `matrix` must be null or a live handle from this library.
char *matfib_matrix_name(const struct MatfibMatrix *matrix);

// The number of truth values, or 0 on a null handle.
//
// # Safety
// `matrix` must be null or a live handle from this library.
size_t matfib_matrix_value_count(const struct MatfibMatrix *matrix);

// Renders the matrix (carrier, designated values, tables) as a fresh
// string, or null on a null handle.
//
// # Safety
// `matrix` must be null or a live handle from this library.
char *matfib_matrix_render(const struct MatfibMatrix *matrix);

// Decides the sequent "premise, premise |- conclusion" (the premise list
// may be empty) in the matrix by exhaustive valuation.
//
// Writes the verdict to `out_holds`. When the sequent is refuted and
// `out_witness` is non-null, also writes a refuting valuation rendered as
// "var=value, ..." (release with [`matfib_string_free`]); on a holding
// sequent a non-null `out_witness` is set to null.
//
// # Safety
// `matrix` must be a live handle from this library, `sequent` a
// NUL-terminated string, `out_holds` a writable pointer; `out_witness`
// may be null.
enum MatfibStatus matfib_entails(const struct MatfibMatrix *matrix,
                                 const char *sequent,
                                 bool *out_holds,
                                 char **out_witness);

// Decides whether the formula is a tautology of the matrix. Out-parameter
// conventions match [`matfib_entails`].
//
// # Safety
// `matrix` must be a live handle from this library, `formula` a
// NUL-terminated string, `out_holds` a writable pointer; `out_witness`
// may be null.
enum MatfibStatus matfib_is_tautology(const struct MatfibMatrix *matrix,
                                      const char *formula,
                                      bool *out_holds,
                                      char **out_witness);

// Counts the fibring pairs between the two matrices under which
// designation is preserved in both directions.
//
// # Safety
// `m1` and `m2` must be live handles from this library and `out_count`
// a writable pointer.
enum MatfibStatus matfib_admissible_pair_count(const struct MatfibMatrix *m1,
                                               const struct MatfibMatrix *m2,
                                               uint64_t *out_count);

// The message of the most recent error on this thread as a fresh string,
// or null when no error has occurred. Release with [`matfib_string_free`].
char *matfib_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `text` must be null or a string returned by this library; it must not
// be used afterwards.
void matfib_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
