#ifndef DOPS_H
#define DOPS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum DopsStatus {
  DOPS_STATUS_OK = 0,
  // Null pointer or non UTF-8 string.
  DOPS_STATUS_INVALID_ARGUMENT = 1,
  // Parameters violate a family invariant.
  DOPS_STATUS_INVALID_PARAMETER = 2,
  // Index beyond the generated order.
  DOPS_STATUS_OUT_OF_RANGE = 3,
  // At least one identity failed; the report is still produced.
  DOPS_STATUS_VERIFICATION_FAILED = 4,
  DOPS_STATUS_UNKNOWN_SUITE = 5,
  DOPS_STATUS_INTERNAL = 6,
} DopsStatus;

// Opaque family handle.
typedef struct DopsFamily DopsFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Mittag-Leffler type family. `c` is a comma-separated list of
// `c_1..c_{d-1}` and may be null.
//
// # Safety
// String arguments are null or NUL-terminated; `out` is writable.
enum DopsStatus dops_family_ml(uint32_t d,
                               const char *alpha,
                               const char *beta,
                               const char *c,
                               uint32_t order,
                               struct DopsFamily **out);

// Laguerre type family. `b` is a comma-separated list of `b_1..b_d` and
// may be null.
//
// # Safety
// String arguments are null or NUL-terminated; `out` is writable.
enum DopsStatus dops_family_laguerre(uint32_t d,
                                     const char *a,
                                     const char *beta_exp,
                                     const char *theta,
                                     const char *b,
                                     uint32_t order,
                                     struct DopsFamily **out);

// Any family from a JSON run configuration, e.g.
// `{"family": "hyp-laguerre", "params": {"alphavec": "1,1/2", "l": "1"}, "order": 8}`.
//
// # Safety
// `json` is NUL-terminated; `out` is writable.
enum DopsStatus dops_family_from_config(const char *json, struct DopsFamily **out);

// Highest degree `N`; 0 for a null handle.
//
// # Safety
// `fam` is null or a live handle.
size_t dops_family_order(const struct DopsFamily *fam);

// # Safety
// `fam` is null or a live handle.
size_t dops_family_d(const struct DopsFamily *fam);

// Coefficient of `x^k` in `P_n` as a `"p/q"` string.
//
// # Safety
// `fam` is a live handle; `out` is writable.
enum DopsStatus dops_family_coeff(const struct DopsFamily *fam, size_t n, size_t k, char **out);

// The `gen` JSON table of the family, `Q` included when `with_q` is set.
//
// # Safety
// `fam` is a live handle; `out` is writable.
enum DopsStatus dops_family_to_json(const struct DopsFamily *fam, bool with_q, char **out);

// Runs the comma-separated `suites` (null or `"all"` for every suite) and
// writes the JSON report. Returns `VerificationFailed` when an identity
// fails; the report is written either way.
//
// # Safety
// `fam` is a live handle; `suites` is null or NUL-terminated; `out` is
// writable.
enum DopsStatus dops_family_verify(const struct DopsFamily *fam, const char *suites, char **out);

// # Safety
// `fam` is null or a handle not yet freed.
void dops_family_free(struct DopsFamily *fam);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void dops_string_free(char *s);

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *dops_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOPS_H */
