#ifndef KMINK_H
#define KMINK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum KminkStatus {
  KMINK_STATUS_OK = 0,
  /**
   * Null pointer or invalid UTF-8 argument.
   */
  KMINK_STATUS_INVALID_ARGUMENT = 1,
  KMINK_STATUS_SYNTAX_ERROR = 2,
  KMINK_STATUS_UNKNOWN_SYMBOL = 3,
  KMINK_STATUS_INDEX_OUT_OF_RANGE = 4,
  KMINK_STATUS_TYPE_ERROR = 5,
  KMINK_STATUS_NOT_UNITARY = 6,
  KMINK_STATUS_NON_INVERTIBLE_CHARGE = 7,
  KMINK_STATUS_CONFIG_ERROR = 8,
  KMINK_STATUS_UNKNOWN_SUITE = 9,
  KMINK_STATUS_IO_ERROR = 10,
  /**
   * The verification ran and at least one asserted identity failed.
   */
  KMINK_STATUS_VERIFICATION_FAILED = 11,
  /**
   * Internal error; the library caught a panic.
   */
  KMINK_STATUS_INTERNAL = 12,
} KminkStatus;

/**
 * Opaque evaluated expression.
 */
typedef struct KminkValue KminkValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and evaluates `text`, storing a new handle in `*out`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum KminkStatus kmink_parse_eval(const char *text, struct KminkValue **out);

/**
 * Canonical rendering of `value`; parse and evaluate it to get the value
 * back. Returns null on a null handle. Free with [`kmink_string_free`].
 *
 * # Safety
 * `value` must be null or a live handle.
 */
char *kmink_value_render(const struct KminkValue *value);

/**
 * `*out = a + b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum KminkStatus kmink_value_add(const struct KminkValue *a,
                                 const struct KminkValue *b,
                                 struct KminkValue **out);

/**
 * `*out = a * b` in normal order.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum KminkStatus kmink_value_mul(const struct KminkValue *a,
                                 const struct KminkValue *b,
                                 struct KminkValue **out);

/**
 * `*out = momentum ▷ element`.
 *
 * # Safety
 * `momentum` and `element` must be live handles and `out` a valid pointer.
 */
enum KminkStatus kmink_value_act(const struct KminkValue *momentum,
                                 const struct KminkValue *element,
                                 struct KminkValue **out);

/**
 * `*out = d(value)`.
 *
 * # Safety
 * `value` must be a live handle and `out` a valid pointer.
 */
enum KminkStatus kmink_value_d(const struct KminkValue *value, struct KminkValue **out);

/**
 * `*out = star(value)`.
 *
 * # Safety
 * `value` must be a live handle and `out` a valid pointer.
 */
enum KminkStatus kmink_value_star(const struct KminkValue *value, struct KminkValue **out);

/**
 * 1 if both handles hold equal values, 0 otherwise (including null).
 *
 * # Safety
 * `a` and `b` must be null or live handles.
 */
int32_t kmink_value_equal(const struct KminkValue *a, const struct KminkValue *b);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `value` must be null or a handle not yet freed.
 */
void kmink_value_free(struct KminkValue *value);

/**
 * Runs a verification suite and stores its JSON-lines report in `*json`
 * (timings omitted, so output is reproducible). Returns
 * `VerificationFailed` when an asserted identity fails; the report is
 * still stored.
 *
 * # Safety
 * `suite` must be a valid NUL-terminated string and `json` a valid pointer.
 */
enum KminkStatus kmink_verify(const char *suite, uint64_t seed, uint32_t max_degree, char **json);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void kmink_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *kmink_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KMINK_H */
