#ifndef GOP_H
#define GOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GOP_OK 0

#define GOP_ERR_NULL_POINTER 1

#define GOP_ERR_UTF8 2

#define GOP_ERR_PARSE 3

#define GOP_ERR_MIXED_BASIS 4

#define GOP_ERR_BAD_PRIME 5

#define GOP_ERR_INVALID_ARGUMENT 6

#define GOP_ERR_UNKNOWN_CATALOG_ID 7

#define GOP_ERR_DOMAIN 8

#define GOP_ERR_PANIC 9

#define GOP_STATUS_NILPOTENT 0

#define GOP_STATUS_NON_NILPOTENT 1

#define GOP_STATUS_BAD_PRIME 2

/**
 * Opaque differential operator.
 */
typedef struct GopOperator GopOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse an operator expression such as `"(1-z)*D^2 - D"`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
int32_t gop_operator_parse(const char *text, GopOperator **out);

/**
 * Operator of a catalog entry, e.g. `"polylog:2"`.
 *
 * # Safety
 * `id` must be a valid NUL-terminated string and `out` a valid pointer.
 */
int32_t gop_operator_from_catalog(const char *id, GopOperator **out);

/**
 * Release a handle. Null is accepted.
 *
 * # Safety
 * `op` must be null or come from this library and not be freed twice.
 */
void gop_operator_free(GopOperator *op);

/**
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
int32_t gop_operator_order(const GopOperator *op, size_t *out);

/**
 * Normal-form text of the operator; parseable by `gop_operator_parse`.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
int32_t gop_operator_to_string(const GopOperator *op, char **out);

/**
 * Singularity and exponent profile as JSON.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
int32_t gop_classify_json(const GopOperator *op, char **out);

/**
 * p-curvature status at one prime: one of the `GOP_STATUS_*` values.
 *
 * # Safety
 * `op` must be a live handle and `status` a valid pointer.
 */
int32_t gop_pcurvature_status(const GopOperator *op, uint64_t p, int32_t *status);

/**
 * Scan of all primes in [lo, hi] as JSON.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
int32_t gop_scan_json(const GopOperator *op, uint64_t lo, uint64_t hi, char **out);

/**
 * Run the command-line front end on `argv` (without the program name).
 * The report goes to `out_stdout`; the process-style exit code (0, 1 or 2)
 * goes to `exit_code`.
 *
 * # Safety
 * `argv` must point to `argc` valid NUL-terminated strings; the out
 * pointers must be valid.
 */
int32_t gop_cli_run(size_t argc, const char *const *argv, char **out_stdout, int32_t *exit_code);

/**
 * Release a string returned by this library. Null is accepted.
 *
 * # Safety
 * `s` must be null or come from this library and not be freed twice.
 */
void gop_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *gop_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *gop_status_description(int32_t code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOP_H */
