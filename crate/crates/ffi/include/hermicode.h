#ifndef HERMICODE_H
#define HERMICODE_H

/* This file is generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call. `Domain` collects all parameter and
 * scope errors (the CLI's exit 2); the guard and verification codes mirror
 * CLI exits 3 and 4.
 */
typedef enum HcStatus {
  HcStatus_Ok = 0,
  HcStatus_Domain = 2,
  HcStatus_SizeGuard = 3,
  HcStatus_Verification = 4,
  HcStatus_NullArgument = 5,
  HcStatus_InvalidUtf8 = 6,
  HcStatus_Panic = 7,
} HcStatus;

/**
 * A one-point Hermitian code handle; create with `hc_code_new`, release
 * with `hc_code_free`.
 */
typedef struct HcCode HcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build the code for pole degree `t` over the field with `q^2` elements.
 * On success `*out` owns the handle.
 */
enum HcStatus hc_code_new(uint64_t q, uint64_t t, struct HcCode **out);

/**
 * Release a handle from `hc_code_new`. Null is a no-op.
 */
void hc_code_free(struct HcCode *code);

/**
 * Code length n = q^3, or 0 if the handle is null.
 */
uint64_t hc_code_length(const struct HcCode *code);

/**
 * Code dimension k, or 0 if the handle is null.
 */
uint64_t hc_code_dimension(const struct HcCode *code);

/**
 * Goppa designed distance q^3 - t, or 0 if the handle is null.
 */
uint64_t hc_code_goppa_bound(const struct HcCode *code);

/**
 * Exact minimum distance by scalar-quotient enumeration. `guard` caps the
 * full message count; pass 0 for the default guard. The result is cached on
 * the handle and shows up in later reports.
 */
enum HcStatus hc_code_exact_distance(struct HcCode *code, uint64_t guard, uint64_t *out_distance);

/**
 * Full code report as JSON, including the exact distance if it has been
 * computed on this handle.
 */
enum HcStatus hc_code_report_json(const struct HcCode *code, bool include_matrix, char **out_json);

/**
 * L-polynomial, class number and bounded A-table as JSON.
 */
enum HcStatus hc_zeta_json(uint64_t q, uint64_t kmax, char **out_json);

/**
 * Existence-criterion search as JSON. `criterion` is "prop23" or "exact".
 */
enum HcStatus hc_prospect_json(uint64_t q, const char *criterion, uint64_t k_min, char **out_json);

/**
 * Affine-lemma verification on the toy q = 2 curve as JSON. The evaluation
 * set is the first `eval_size` affine points in canonical order.
 */
enum HcStatus hc_verify_lemma_json(uint64_t eval_size, uint64_t s, uint64_t m, char **out_json);

/**
 * Asymptotic distance-improvement profile as JSON; needs q >= 4.
 */
enum HcStatus hc_asymptotic_json(uint64_t q, char **out_json);

/**
 * Release a string returned by any `_json` call. Null is a no-op.
 */
void hc_string_free(char *s);

/**
 * Message of the last error on this thread; empty until the first failure.
 */
const char *hc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMICODE_H */
