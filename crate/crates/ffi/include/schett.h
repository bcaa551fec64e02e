#ifndef SCHETT_H
#define SCHETT_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Matrices that [`schett_matrix_new`] can build.
 */
typedef enum SchettMatrixKind {
  SCHETT_MATRIX_KIND_P = 0,
  SCHETT_MATRIX_KIND_Q = 1,
  SCHETT_MATRIX_KIND_T = 2,
  SCHETT_MATRIX_KIND_L = 3,
  SCHETT_MATRIX_KIND_GENERIC = 4,
  SCHETT_MATRIX_KIND_OUTPUT_P = 5,
  SCHETT_MATRIX_KIND_OUTPUT_Q = 6,
  SCHETT_MATRIX_KIND_HANKEL_EVEN = 7,
  SCHETT_MATRIX_KIND_HANKEL_ODD = 8,
} SchettMatrixKind;

/**
 * Status code returned by every fallible function.
 */
typedef enum SchettStatus {
  SCHETT_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SCHETT_STATUS_NULL_POINTER = 1,
  /**
   * An argument was out of range or malformed (including invalid UTF-8 or JSON).
   */
  SCHETT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The computation itself reported an error.
   */
  SCHETT_STATUS_COMPUTATION = 3,
  /**
   * A Rust panic was caught at the boundary.
   */
  SCHETT_STATUS_PANIC = 4,
} SchettStatus;

/**
 * Opaque matrix handle.
 */
typedef struct SchettMatrix SchettMatrix;

/**
 * Opaque polynomial handle.
 */
typedef struct SchettPoly SchettPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null. The
 * pointer stays valid until the next call into this library on this thread.
 */
const char *schett_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *schett_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not yet freed.
 */
void schett_string_free(char *s);

/**
 * `X_n^{[m+1]}` in `m + 1` variables; `m = 2` gives the classical `X_n(x, y, z)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SchettStatus schett_poly_new(size_t n, size_t m, struct SchettPoly **out);

/**
 * Reduced Schett polynomial of index `n` in `X, Y, Z`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SchettStatus schett_reduced_new(size_t n, struct SchettPoly **out);

/**
 * Permutation-statistics polynomial `D_n`, optionally weighted by cycles.
 * Enumerates `n!` permutations; `n` is limited to 12.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SchettStatus schett_dumont_new(size_t n, bool with_lambda, struct SchettPoly **out);

/**
 * Parses a polynomial from its JSON interchange form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum SchettStatus schett_poly_from_json(const char *json, struct SchettPoly **out);

/**
 * JSON interchange form of a polynomial.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum SchettStatus schett_poly_to_json(const struct SchettPoly *p, char **out);

/**
 * LaTeX rendering of a polynomial.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum SchettStatus schett_poly_to_latex(const struct SchettPoly *p, char **out);

/**
 * Plain-text rendering, e.g. `4*x^2*y*z + y^3*z + y*z^3`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum SchettStatus schett_poly_to_string(const struct SchettPoly *p, char **out);

/**
 * Exact equality of two polynomials (variables matched by name).
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
enum SchettStatus schett_poly_equal(const struct SchettPoly *a,
                                    const struct SchettPoly *b,
                                    bool *out);

/**
 * Releases a polynomial handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from this library that was not yet freed.
 */
void schett_poly_free(struct SchettPoly *p);

/**
 * Builds the leading `size x size` block of the selected matrix. `squared`
 * selects `X, Y, Z` instead of `x, y, z` where both are available.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SchettStatus schett_matrix_new(enum SchettMatrixKind kind,
                                    size_t size,
                                    bool squared,
                                    struct SchettMatrix **out);

/**
 * Parses a matrix from the JSON form produced by [`schett_matrix_to_json`].
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum SchettStatus schett_matrix_from_json(const char *json, struct SchettMatrix **out);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t schett_matrix_rows(const struct SchettMatrix *m);

/**
 * Number of columns, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t schett_matrix_cols(const struct SchettMatrix *m);

/**
 * Copies entry `(i, j)` into a new polynomial handle.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid for writes.
 */
enum SchettStatus schett_matrix_entry(const struct SchettMatrix *m,
                                      size_t i,
                                      size_t j,
                                      struct SchettPoly **out);

/**
 * JSON form of a matrix (`rows`, `cols`, `entries`, `source`, `exact_block`).
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid for writes.
 */
enum SchettStatus schett_matrix_to_json(const struct SchettMatrix *m, char **out);

/**
 * Checks every minor of order `<= max_order` for nonnegative coefficients.
 * Writes the certificate JSON to `cert_json` and the verdict to `passed`.
 * A failing verdict is still a successful call.
 *
 * # Safety
 * `m` must be a live handle; `cert_json` and `passed` must be valid for writes.
 */
enum SchettStatus schett_matrix_certify(const struct SchettMatrix *m,
                                        size_t max_order,
                                        char **cert_json,
                                        bool *passed);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from this library that was not yet freed.
 */
void schett_matrix_free(struct SchettMatrix *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHETT_H */
