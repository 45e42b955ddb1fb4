/* C interface for the two-loop modular graph function toolkit. */

#ifndef MGF_H
#define MGF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum MgfStatus {
  /**
   * Success.
   */
  Ok = 0,
  /**
   * Arguments outside an operation's domain.
   */
  InvalidArgument = 2,
  /**
   * A formula assembled a divergent zeta(1) with nonzero coefficient.
   */
  ZetaOneGuard = 3,
  /**
   * Numerics could not certify the requested tolerance.
   */
  Unconverged = 4,
  /**
   * A conjectured identity failed exactly.
   */
  ConjectureViolation = 5,
  /**
   * A required pointer argument was null.
   */
  NullPointer = 6,
  /**
   * A string argument was not valid UTF-8.
   */
  InvalidUtf8 = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  Internal = 8,
} MgfStatus;

/**
 * Opaque odd-pair decomposition of the bottom Laurent coefficient.
 */
typedef struct MgfGamma MgfGamma;

/**
 * Opaque exact Laurent polynomial of a constant Fourier mode.
 */
typedef struct MgfLaurent MgfLaurent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *mgf_version(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through an out-parameter of
 * this library and not yet freed.
 */
void mgf_string_free(char *s);

/**
 * Computes the exact Laurent polynomial of the constant mode of
 * `C_{a1,a2,a3}` (in the variable `u = 4 pi tau2`).
 *
 * # Safety
 * `out` must be a valid pointer; on `Ok` it receives a handle to release
 * with [`mgf_laurent_free`].
 */
enum MgfStatus mgf_laurent_compute(uint32_t a1, uint32_t a2, uint32_t a3, struct MgfLaurent **out);

/**
 * Renders a Laurent polynomial. `variable` is one of `"u"`, `"y"`,
 * `"tau2"`; `format` one of `"text"`, `"latex"`, `"json"`.
 *
 * # Safety
 * `poly` must be a live handle from [`mgf_laurent_compute`]; `out`
 * receives a string to release with [`mgf_string_free`].
 */
enum MgfStatus mgf_laurent_render(const struct MgfLaurent *poly,
                                  const char *variable,
                                  const char *format,
                                  char **out);

/**
 * Weight `w` of the underlying graph function.
 *
 * # Safety
 * `poly` must be a live handle.
 */
uint32_t mgf_laurent_weight(const struct MgfLaurent *poly);

/**
 * # Safety
 * `poly` must come from [`mgf_laurent_compute`] and not be freed twice.
 */
void mgf_laurent_free(struct MgfLaurent *poly);

/**
 * Computes the odd-pair decomposition coefficients `gamma_k` of
 * `c_{2-w}`, cross-checked internally against the depth-two reduction.
 *
 * # Safety
 * `out` must be valid; release the handle with [`mgf_gamma_free`].
 */
enum MgfStatus mgf_gamma_compute(uint32_t a1, uint32_t a2, uint32_t a3, struct MgfGamma **out);

/**
 * Number of raw coefficients (`w - 2`).
 *
 * # Safety
 * `gamma` must be a live handle.
 */
uintptr_t mgf_gamma_len(const struct MgfGamma *gamma);

/**
 * The raw coefficient `gamma_k` (1-based `k`) as a rational string.
 *
 * # Safety
 * `gamma` must be live; `out` receives a string for [`mgf_string_free`].
 */
enum MgfStatus mgf_gamma_raw(const struct MgfGamma *gamma, uintptr_t k, char **out);

/**
 * True when every `gamma_k` is an integer.
 *
 * # Safety
 * `gamma` must be a live handle.
 */
bool mgf_gamma_all_integral(const struct MgfGamma *gamma);

/**
 * # Safety
 * `gamma` must come from [`mgf_gamma_compute`] and not be freed twice.
 */
void mgf_gamma_free(struct MgfGamma *gamma);

/**
 * Evaluates the vanishing sum `X_n(a1,a2,a3)` exactly; writes the value
 * as a rational string (conjecturally always `"0"`).
 *
 * # Safety
 * `out` receives a string for [`mgf_string_free`].
 */
enum MgfStatus mgf_x_value(int64_t n, int64_t a1, int64_t a2, int64_t a3, char **out);

/**
 * Numeric constant Fourier mode of `C_{a1,a2,a3}` at `tau2`, by the
 * tail-corrected lattice sum; writes the value and an error bound.
 *
 * # Safety
 * `value_out` and `error_out` must be valid pointers.
 */
enum MgfStatus mgf_constant_mode(uint32_t a1,
                                 uint32_t a2,
                                 uint32_t a3,
                                 double tau2,
                                 uint64_t cutoff,
                                 uint32_t prec,
                                 double *value_out,
                                 double *error_out);

/**
 * Verifies one of the identities `id1 | id2a | id2b | id2c | id3` at
 * `tau = tau1 + i tau2`; writes `|LHS - RHS|` and returns `Ok` when it is
 * within `tol`, `Unconverged` otherwise.
 *
 * # Safety
 * `name` must be a C string; `difference_out` a valid pointer.
 */
enum MgfStatus mgf_verify_identity(const char *name,
                                   double tau1,
                                   double tau2,
                                   uint64_t cutoff,
                                   uint32_t prec,
                                   double tol,
                                   double *difference_out);

/**
 * Eisenstein series `E_w(tau)` by its Fourier expansion.
 *
 * # Safety
 * `value_out` and `error_out` must be valid pointers.
 */
enum MgfStatus mgf_eisenstein(uint32_t w,
                              double tau1,
                              double tau2,
                              uint64_t terms,
                              uint32_t prec,
                              double *value_out,
                              double *error_out);

/**
 * Decaying particular solution `phi_{s,m}(y)`.
 *
 * # Safety
 * `value_out` and `error_out` must be valid pointers.
 */
enum MgfStatus mgf_phi_sm(int64_t s,
                          int64_t m,
                          double y,
                          uint32_t prec,
                          double *value_out,
                          double *error_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MGF_H */
