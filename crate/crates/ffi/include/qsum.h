#ifndef QSUM_H
#define QSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Averaging method for [`qsum_average`].
 */
typedef enum QsumMethod {
  QSUM_METHOD_CHAIN = 0,
  QSUM_METHOD_DIRICHLET = 1,
} QsumMethod;

/**
 * Status codes.
 */
typedef enum QsumStatus {
  QSUM_STATUS_OK = 0,
  QSUM_STATUS_NULL_POINTER = 1,
  QSUM_STATUS_INVALID_ARGUMENT = 2,
  QSUM_STATUS_SIGN_CONSTRAINT = 3,
  QSUM_STATUS_NOT_FUNDAMENTAL = 4,
  QSUM_STATUS_SQUARE_DISCRIMINANT = 5,
  QSUM_STATUS_NO_CONVERGENCE = 6,
  QSUM_STATUS_OVERFLOW = 7,
  QSUM_STATUS_INTERNAL = 8,
  QSUM_STATUS_PANIC = 9,
} QsumStatus;

/**
 * The classes of one positive non-square discriminant.
 */
typedef struct QsumClasses QsumClasses;

/**
 * A validated `(k, D, d)` with its genus-character cache.
 */
typedef struct QsumPair QsumPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a pair handle.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum QsumStatus qsum_pair_new(uint32_t k, int64_t big_d, int64_t d, struct QsumPair **out);

/**
 * Releases a pair handle. Null is ignored.
 *
 * # Safety
 * `pair` must be null or a handle from [`qsum_pair_new`] not yet freed.
 */
void qsum_pair_free(struct QsumPair *pair);

/**
 * `F_{k,D,d}(x)` for `x` given as an integer or `p/q` string; the result
 * is written as `p/q` (or an integer).
 *
 * # Safety
 * `pair` must be a live handle, `x` a NUL-terminated string and `out`
 * writable.
 */
enum QsumStatus qsum_eval_f(const struct QsumPair *pair, const char *x, char **out);

/**
 * `N_{D,d}(n)`.
 *
 * # Safety
 * `pair` must be a live handle and `out` writable.
 */
enum QsumStatus qsum_n_dd(const struct QsumPair *pair, uint64_t n, int64_t *out);

/**
 * Cohen's number `H(k, N)` as a rational string.
 *
 * # Safety
 * `out` must be writable.
 */
enum QsumStatus qsum_cohen_h(uint32_t k, uint64_t n, char **out);

/**
 * Average of `F` over a period. Writes the numeric value as a decimal
 * string, the exact value as a rational string and the absolute error.
 *
 * # Safety
 * `pair` must be a live handle; each out pointer must be writable.
 */
enum QsumStatus qsum_average(const struct QsumPair *pair,
                             enum QsumMethod method,
                             double tolerance,
                             uint32_t precision_bits,
                             char **value_out,
                             char **exact_out,
                             double *abs_error_out);

/**
 * Enumerates the classes of discriminant `delta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QsumStatus qsum_classes_new(int64_t delta, struct QsumClasses **out);

/**
 * Number of classes.
 *
 * # Safety
 * `classes` must be a live handle and `out` writable.
 */
enum QsumStatus qsum_classes_count(const struct QsumClasses *classes, size_t *out);

/**
 * Cycle of class `index` as a JSON array of `[a, b, c]` string triples.
 *
 * # Safety
 * `classes` must be a live handle and `out` writable.
 */
enum QsumStatus qsum_classes_cycle(const struct QsumClasses *classes, size_t index, char **out);

/**
 * Releases a classes handle. Null is ignored.
 *
 * # Safety
 * `classes` must be null or a handle from [`qsum_classes_new`] not yet
 * freed.
 */
void qsum_classes_free(struct QsumClasses *classes);

/**
 * Runs the named suite with default parameters and `seed`. Writes the JSON
 * report and whether every case passed.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; out pointers must be writable.
 */
enum QsumStatus qsum_verify(const char *suite, uint64_t seed, char **report_out, bool *passed_out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void qsum_string_free(char *s);

/**
 * Message for the last failure on this thread; empty if none.
 */
const char *qsum_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QSUM_H */
