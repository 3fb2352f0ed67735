#ifndef MOTZKIN_H
#define MOTZKIN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum MzStatus {
  MZ_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MZ_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string was not valid UTF-8.
   */
  MZ_STATUS_INVALID_UTF8 = 2,
  /**
   * A set literal or polynomial failed to parse.
   */
  MZ_STATUS_PARSE = 3,
  /**
   * The request is outside what the chosen route supports.
   */
  MZ_STATUS_REJECTED = 4,
  /**
   * Not enough terms for the requested degree bounds.
   */
  MZ_STATUS_INSUFFICIENT_TERMS = 5,
  /**
   * No polynomial within the degree bounds.
   */
  MZ_STATUS_NOT_FOUND = 6,
  /**
   * Routes disagree or an internal check failed.
   */
  MZ_STATUS_INCONSISTENT = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  MZ_STATUS_PANIC = 8,
} MzStatus;

/**
 * A polynomial in `P` and `x`.
 */
typedef struct MzPoly MzPoly;

/**
 * Restriction sets A (peak heights), B (valley heights), C, D, E (up, down
 * and flat run lengths).
 */
typedef struct MzSpec MzSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *mz_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *mz_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mz_string_free(char *s);

/**
 * Builds a restriction spec from five set literals (null = empty set).
 *
 * # Safety
 * Non-null strings must be nul-terminated; `out` must be writable.
 */
enum MzStatus mz_spec_new(const char *a,
                          const char *b,
                          const char *c,
                          const char *d,
                          const char *e,
                          struct MzSpec **out);

/**
 * # Safety
 * `spec` must come from [`mz_spec_new`] and not have been freed.
 */
void mz_spec_free(struct MzSpec *spec);

/**
 * `a(0..=n)` from the numeric recurrences, comma-separated.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_seq(const struct MzSpec *spec, size_t n, char **out);

/**
 * `a(0..=n)` by exhaustive enumeration, comma-separated. Fails with
 * `Rejected` above the enumeration guard.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_oracle(const struct MzSpec *spec, size_t n, char **out);

/**
 * Symbolic polynomial for forbidden peak heights `a` and valley heights `b`.
 *
 * # Safety
 * Non-null strings must be nul-terminated; `out` must be writable.
 */
enum MzStatus mz_fab(const char *a, const char *b, struct MzPoly **out);

/**
 * Symbolic polynomial for forbidden up, down and flat run lengths.
 *
 * # Safety
 * Non-null strings must be nul-terminated; `out` must be writable.
 */
enum MzStatus mz_fcde(const char *c, const char *d, const char *e, struct MzPoly **out);

/**
 * Fits a polynomial with degrees at most `(maxp, maxx)` to `a(0..=n)` and
 * confirms it on ten further terms.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_guess(const struct MzSpec *spec,
                       size_t n,
                       size_t maxp,
                       size_t maxx,
                       struct MzPoly **out);

/**
 * Parses a polynomial in `P` and `x`, e.g. `"x^2*P^2 + (x-1)*P + 1"`.
 *
 * # Safety
 * `text` must be nul-terminated; `out` must be writable.
 */
enum MzStatus mz_poly_parse(const char *text, struct MzPoly **out);

/**
 * # Safety
 * `poly` must come from this library and not have been freed.
 */
void mz_poly_free(struct MzPoly *poly);

/**
 * Canonical text form.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_poly_to_string(const struct MzPoly *poly, char **out);

/**
 * JSON document (`"schema": "motzkin-autocount/1"`).
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum MzStatus mz_poly_to_json(const struct MzPoly *poly, char **out);

/**
 * Degree in `P` (`var` = 0) or `x` (`var` = 1); -1 for a null handle or an
 * unknown variable.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
int mz_poly_degree(const struct MzPoly *poly, int var);

/**
 * 1 when the polynomial was certified minimal by the symbolic route or is a
 * confirmed guess, 0 otherwise (including parsed polynomials and null).
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
int mz_poly_is_minimal(const struct MzPoly *poly);

/**
 * 1 when both handles hold the same polynomial, 0 otherwise.
 *
 * # Safety
 * Both pointers must be null or live handles.
 */
int mz_poly_equal(const struct MzPoly *a, const struct MzPoly *b);

/**
 * Sets `*out` to 1 when the polynomial vanishes on `a(0..=n)` of `spec`
 * (numeric recurrences), else 0.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum MzStatus mz_poly_vanishes_on(const struct MzPoly *poly,
                                  const struct MzSpec *spec,
                                  size_t n,
                                  int *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTZKIN_H */
