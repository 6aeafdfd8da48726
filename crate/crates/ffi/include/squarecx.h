#ifndef SQUARECX_H
#define SQUARECX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SqcxStatus {
  SQCX_STATUS_OK = 0,
  SQCX_STATUS_NULL_POINTER = 1,
  SQCX_STATUS_INVALID_UTF8 = 2,
  SQCX_STATUS_INVALID_INPUT = 3,
  SQCX_STATUS_INTERNAL = 4,
  SQCX_STATUS_PANIC = 5,
} SqcxStatus;

/**
 * Opaque complex handle.
 */
typedef struct SqcxComplex SqcxComplex;

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next squarecx call on the same thread.
 */
const char *sqcx_last_error(void);

/**
 * Parses the text format.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum SqcxStatus sqcx_complex_parse(const char *spec, struct SqcxComplex **out);

/**
 * Builds a named complex: lot-a, lot-b, g1, gf, g2 or torus.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum SqcxStatus sqcx_complex_named(const char *name, struct SqcxComplex **out);

/**
 * Builds the labeled oriented tree family member with generators
 * `stem0..stem{k}`.
 *
 * # Safety
 * `stem` must be a NUL-terminated string and `out` writable.
 */
enum SqcxStatus sqcx_complex_lot(size_t k, const char *stem, struct SqcxComplex **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `complex` must come from this library and not be used afterwards.
 */
void sqcx_complex_free(struct SqcxComplex *complex);

/**
 * # Safety
 * `complex` must be a live handle and the out-pointers writable.
 */
enum SqcxStatus sqcx_complex_counts(const struct SqcxComplex *complex,
                                    size_t *generators,
                                    size_t *squares);

/**
 * The complex in the text format.
 *
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum SqcxStatus sqcx_complex_render(const struct SqcxComplex *complex, char **out);

/**
 * Whether the link has girth at least 4.
 *
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum SqcxStatus sqcx_is_large(const struct SqcxComplex *complex, bool *out);

/**
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum SqcxStatus sqcx_poison_count(const struct SqcxComplex *complex, size_t *out);

/**
 * Kernel rank for a weight specification such as "a=1,b=2"; NULL means
 * every weight is 1.
 *
 * # Safety
 * `complex` must be a live handle, `weights` NULL or NUL-terminated, and
 * `out` writable.
 */
enum SqcxStatus sqcx_kernel_rank(const struct SqcxComplex *complex,
                                 const char *weights,
                                 int64_t *out);

/**
 * Full analysis report as JSON. `weights` may be NULL (every weight 1).
 *
 * # Safety
 * `complex` must be a live handle, `weights` NULL or NUL-terminated, and
 * `out` writable.
 */
enum SqcxStatus sqcx_analyze_json(const struct SqcxComplex *complex,
                                  const char *weights,
                                  int64_t radius,
                                  char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void sqcx_string_free(char *s);

#endif  /* SQUARECX_H */
