#ifndef BKPTAU_H
#define BKPTAU_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BkpStatus {
  BKP_STATUS_OK = 0,
  BKP_STATUS_NULL_POINTER = 1,
  BKP_STATUS_INVALID_UTF8 = 2,
  BKP_STATUS_PARSE = 3,
  BKP_STATUS_INVALID_ARGUMENT = 4,
  BKP_STATUS_INSUFFICIENT_CUTOFF = 5,
  BKP_STATUS_MATH = 6,
  BKP_STATUS_PANIC = 7,
} BkpStatus;

/**
 * Opaque handle to a truncated graded series.
 */
typedef struct BkpSeries BkpSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The BGW tau-function `tau(t/2; N)` through weight `cutoff`.
 *
 * # Safety
 * `n` and `hbar` are NUL-terminated rationals ("p/q" or integers); `out` is writable.
 */
enum BkpStatus bkp_bgw_tau(const char *n,
                           const char *hbar,
                           uint32_t cutoff,
                           struct BkpSeries **out);

/**
 * The hypergeometric tau-function with weights `u`, `w` and specialized second
 * times `s[s_index[i]] = s_value[i]`, scaled by `hbar^k`.
 *
 * # Safety
 * Each array holds the stated number of valid entries; `out` is writable.
 */
enum BkpStatus bkp_hypergeometric_tau(const char *const *u,
                                      size_t n_u,
                                      const char *const *w,
                                      size_t n_w,
                                      const uint32_t *s_index,
                                      const char *const *s_value,
                                      size_t n_s,
                                      const char *hbar,
                                      uint32_t cutoff,
                                      struct BkpSeries **out);

/**
 * `Q_lambda(t)`, or `Q_lambda(t/2)` when `half` is true, through weight `cutoff`.
 *
 * # Safety
 * `parts` holds `n_parts` entries; `out` is writable.
 */
enum BkpStatus bkp_q_lambda(const uint32_t *parts,
                            size_t n_parts,
                            uint32_t cutoff,
                            bool half,
                            struct BkpSeries **out);

/**
 * Parses the series JSON format.
 *
 * # Safety
 * `json` is NUL-terminated; `out` is writable.
 */
enum BkpStatus bkp_series_from_json(const char *json, struct BkpSeries **out);

/**
 * Canonical JSON of a series; release with `bkp_string_free`.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum BkpStatus bkp_series_to_json(const struct BkpSeries *s, char **out);

/**
 * Coefficient of `prod t_{index[i]}^{exponent[i]}` as a rational string.
 *
 * # Safety
 * `s` is a live handle; the arrays hold `len` entries; `out` is writable.
 */
enum BkpStatus bkp_series_coeff(const struct BkpSeries *s,
                                const uint32_t *index,
                                const uint32_t *exponent,
                                size_t len,
                                char **out);

/**
 * Weight cutoff of a series.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum BkpStatus bkp_series_cutoff(const struct BkpSeries *s, uint32_t *out);

/**
 * Exact equality, cutoffs included.
 *
 * # Safety
 * `a`, `b` are live handles; `out` is writable.
 */
enum BkpStatus bkp_series_equal(const struct BkpSeries *a, const struct BkpSeries *b, bool *out);

/**
 * Hirota check through bidegree `(dt, dt2)`; `report` (optional) receives the JSON report.
 *
 * # Safety
 * `s` is a live handle; `passed` is writable; `report` is null or writable.
 */
enum BkpStatus bkp_is_bkp_tau(const struct BkpSeries *s,
                              uint32_t dt,
                              uint32_t dt2,
                              bool *passed,
                              char **report);

/**
 * # Safety
 * `s` is null or a handle from this library, not yet freed.
 */
void bkp_series_free(struct BkpSeries *s);

/**
 * # Safety
 * `s` is null or a string from this library, not yet freed.
 */
void bkp_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the next call.
 */
const char *bkp_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BKPTAU_H */
