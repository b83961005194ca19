#ifndef ADM_H
#define ADM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum AdmStatus {
  ADM_STATUS_OK = 0,
  ADM_STATUS_NULL_POINTER = 1,
  ADM_STATUS_INVALID_ARGUMENT = 2,
  ADM_STATUS_INVALID_FILTER = 3,
  ADM_STATUS_DOMAIN = 4,
  ADM_STATUS_IO = 5,
  ADM_STATUS_BLOW_UP = 6,
  ADM_STATUS_CONFIG = 7,
  ADM_STATUS_PANIC = 8,
} AdmStatus;

/**
 * Filter family selector for [`AdmFilter`].
 */
typedef enum AdmFilterKind {
  ADM_FILTER_KIND_HELMHOLTZ = 0,
  ADM_FILTER_KIND_GAUSSIAN = 1,
  ADM_FILTER_KIND_GAUSSIAN_APPROX = 2,
  ADM_FILTER_KIND_HELMHOLTZ_POWER = 3,
} AdmFilterKind;

/**
 * Opaque velocity field in spectral form.
 */
typedef struct AdmField AdmField;

/**
 * Filter description. `alpha` and `p` are used by Helmholtz, `alpha` by
 * both Gaussian kinds, `mu` by Helmholtz powers and `m` by the
 * approximant and powers.
 */
typedef struct AdmFilter {
  enum AdmFilterKind kind;
  double alpha;
  double p;
  double mu;
  uint32_t m;
} AdmFilter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static nul-terminated string.
 */
const char *adm_version(void);

/**
 * Copies the last error message of this thread into `buf` (truncated,
 * always nul-terminated when `len > 0`) and returns its full length in
 * bytes, or 0 when no error was recorded.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t adm_last_error(char *buf, size_t len);

/**
 * Filter symbol Ĝ at `k2 = |k|²`.
 *
 * # Safety
 * `filter` and `result` must be valid pointers.
 */
enum AdmStatus adm_filter_symbol(const struct AdmFilter *filter, double k2, double *result);

/**
 * Deconvolution symbol D̂_N at `k2`.
 *
 * # Safety
 * `filter` and `result` must be valid pointers.
 */
enum AdmStatus adm_deconv_symbol(const struct AdmFilter *filter,
                                 uint32_t order,
                                 double k2,
                                 double *result);

/**
 * Evaluates one scalar inequality (`inq_tech2`, `inq_tech3`, `inq_tech1`
 * or `transf_est`). Unused parameters are ignored. `passes` receives 1 or 0
 * and `margin` receives `rhs − lhs`; either may be null.
 *
 * # Safety
 * `name` must be a nul-terminated string; outputs must be null or valid.
 */
enum AdmStatus adm_check_inequality(const char *name,
                                    double x,
                                    double a,
                                    double m,
                                    uint32_t n,
                                    int32_t *passes,
                                    double *margin);

/**
 * `log₁₀ κ` for `κ = u⁴/ν · exp(u⁴/ν³)`.
 *
 * # Safety
 * `result` must be valid.
 */
enum AdmStatus adm_kappa_log10(double u_l4h1, double nu, double *result);

/**
 * `log₁₀` of the main Helmholtz error bound.
 *
 * # Safety
 * `result` must be valid.
 */
enum AdmStatus adm_bound_main_log10(double u_l4h1,
                                    double nu,
                                    double c,
                                    double alpha,
                                    double p,
                                    uint32_t order,
                                    double *result);

/**
 * Taylor-Green vortex on an `n³` grid of a box of side `box_size`.
 *
 * # Safety
 * `handle` must be valid.
 */
enum AdmStatus adm_field_taylor_green(size_t n,
                                      double box_size,
                                      double amplitude,
                                      struct AdmField **handle);

/**
 * Seeded divergence-free random field with `|û_k| ∝ |k|^{−decay/2}` and
 * `||u||₀² = energy`.
 *
 * # Safety
 * `handle` must be valid.
 */
enum AdmStatus adm_field_random(size_t n,
                                double box_size,
                                double decay,
                                double energy,
                                uint64_t seed,
                                struct AdmField **handle);

/**
 * Reads an ADMF snapshot.
 *
 * # Safety
 * `path` must be a nul-terminated string and `handle` valid.
 */
enum AdmStatus adm_field_read(const char *path, struct AdmField **handle);

/**
 * Writes an ADMF snapshot.
 *
 * # Safety
 * `f` must be a live handle and `path` a nul-terminated string.
 */
enum AdmStatus adm_field_write(const struct AdmField *f, const char *path);

/**
 * Releases a field. Null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void adm_field_free(struct AdmField *f);

/**
 * Grid points per axis, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t adm_field_n(const struct AdmField *f);

/**
 * `||u||_s`.
 *
 * # Safety
 * `f` must be a live handle and `result` valid.
 */
enum AdmStatus adm_field_sobolev_norm(const struct AdmField *f, double s, double *result);

/**
 * New field `G u`.
 *
 * # Safety
 * `f`, `filter` and `handle` must be valid.
 */
enum AdmStatus adm_field_filter(const struct AdmField *f,
                                const struct AdmFilter *filter,
                                struct AdmField **handle);

/**
 * New field `D_N u`.
 *
 * # Safety
 * `f`, `filter` and `handle` must be valid.
 */
enum AdmStatus adm_field_deconvolve(const struct AdmField *f,
                                    const struct AdmFilter *filter,
                                    uint32_t order,
                                    struct AdmField **handle);

/**
 * `||u⊗u − D_N ū ⊗ D_N ū||₀`.
 *
 * # Safety
 * `f`, `filter` and `result` must be valid.
 */
enum AdmStatus adm_residual_stress_norm(const struct AdmField *f,
                                        const struct AdmFilter *filter,
                                        uint32_t order,
                                        double *result);

/**
 * Runs the experiment described by a JSON configuration and returns the
 * error report (per-order summary, fitted rate, constants) as a JSON
 * string in `report`, to be released with [`adm_string_free`].
 *
 * # Safety
 * `config_json` must be a nul-terminated string and `report` valid.
 */
enum AdmStatus adm_run_experiment(const char *config_json, char **report);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void adm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADM_H */
