#ifndef PRONY_CMX_H
#define PRONY_CMX_H

/* Generated by cbindgen from the prony-cmx-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible call.
 */
typedef enum CmxStatus {
  CMX_STATUS_OK = 0,
  CMX_STATUS_NULL_POINTER = 1,
  CMX_STATUS_INVALID_ARGUMENT = 2,
  CMX_STATUS_UNKNOWN_MODEL = 3,
  CMX_STATUS_DEGENERATE = 4,
  CMX_STATUS_REPEATED_ROOTS = 5,
  CMX_STATUS_ILL_CONDITIONED = 6,
  CMX_STATUS_INSUFFICIENT_DATA = 7,
  CMX_STATUS_POLE = 8,
  CMX_STATUS_INTERNAL = 9,
} CmxStatus;

/*
 Ground-energy expansion at fixed order.
 */
typedef struct CmxEnergyFit CmxEnergyFit;

/*
 Exact moment and connected-moment sequences (doubles at this boundary).
 */
typedef struct CmxMoments CmxMoments;

/*
 Raw exponential-sum solution for caller-supplied data.
 */
typedef struct CmxPronyFit CmxPronyFit;

/*
 Model/trial pair from the built-in catalog.
 */
typedef struct CmxSystem CmxSystem;

/*
 Exponential fit of the generating function at fixed order.
 */
typedef struct CmxZFit CmxZFit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Open a catalog entry by name (`ho`, `ho_gauss`, `quartic`, `coupled2d`,
 `double_well`).

 # Safety
 `name` must be a valid NUL-terminated string; `out` must be a valid
 pointer. On success the handle must be released with `cmx_system_free`.
 */
enum CmxStatus cmx_system_open(const char *name, struct CmxSystem **out);

/*
 # Safety
 `sys` must come from `cmx_system_open` and not be freed twice.
 */
void cmx_system_free(struct CmxSystem *sys);

/*
 Compute μ_0..μ_J and I_1..I_J for the system.

 # Safety
 `sys` must be a live handle; `out` must be valid. Release the result with
 `cmx_moments_free`.
 */
enum CmxStatus cmx_moments_compute(const struct CmxSystem *sys,
                                   uint32_t j_max,
                                   struct CmxMoments **out);

/*
 # Safety
 `m` must come from `cmx_moments_compute` and not be freed twice.
 */
void cmx_moments_free(struct CmxMoments *m);

/*
 Highest available moment order J.

 # Safety
 `m` must be a live handle.
 */
uint32_t cmx_moments_order(const struct CmxMoments *m);

/*
 μ_j as a double.

 # Safety
 `m` must be a live handle and `out` valid.
 */
enum CmxStatus cmx_moments_mu(const struct CmxMoments *m, uint32_t j, double *out);

/*
 Connected moment I_k, k = 1..J.

 # Safety
 `m` must be a live handle and `out` valid.
 */
enum CmxStatus cmx_moments_connected(const struct CmxMoments *m, uint32_t k, double *out);

/*
 Solve F_k = Σ A_n b_n^(k+s) for caller-supplied data (len = 2N values
 F_1..F_2N). `use_pencil` nonzero selects the Hankel-pencil route,
 otherwise the polynomial route.

 # Safety
 `values` must point to `len` doubles; `out` must be valid. Release with
 `cmx_prony_free`.
 */
enum CmxStatus cmx_prony_solve(const double *values,
                               size_t len,
                               int32_t shift,
                               int32_t use_pencil,
                               struct CmxPronyFit **out);

/*
 # Safety
 `p` must come from `cmx_prony_solve` and not be freed twice.
 */
void cmx_prony_free(struct CmxPronyFit *p);

/*
 # Safety
 `p` must be a live handle.
 */
uint32_t cmx_prony_order(const struct CmxPronyFit *p);

/*
 # Safety
 `p` must be a live handle.
 */
double cmx_prony_residual(const struct CmxPronyFit *p);

/*
 Exponent b_idx (sorted by ascending real part).

 # Safety
 `p` must be a live handle; `re`/`im` valid.
 */
enum CmxStatus cmx_prony_exponent(const struct CmxPronyFit *p,
                                  uint32_t idx,
                                  double *re,
                                  double *im);

/*
 Amplitude A_idx, ordered with the exponents.

 # Safety
 `p` must be a live handle; `re`/`im` valid.
 */
enum CmxStatus cmx_prony_amplitude(const struct CmxPronyFit *p,
                                   uint32_t idx,
                                   double *re,
                                   double *im);

/*
 Build the ground-energy expansion at the given order from a moment handle.

 # Safety
 `m` must be a live handle; `out` valid. Release with
 `cmx_energy_fit_free`.
 */
enum CmxStatus cmx_energy_fit(const struct CmxMoments *m,
                              uint32_t order,
                              struct CmxEnergyFit **out);

/*
 # Safety
 `f` must come from `cmx_energy_fit` and not be freed twice.
 */
void cmx_energy_fit_free(struct CmxEnergyFit *f);

/*
 The ground-energy estimate A_0.

 # Safety
 `f` must be a live handle.
 */
double cmx_energy_estimate(const struct CmxEnergyFit *f);

/*
 E^(N)(t).

 # Safety
 `f` must be a live handle; `out` valid.
 */
enum CmxStatus cmx_energy_eval(const struct CmxEnergyFit *f, double t, double *out);

/*
 1 when every recovered root has positive real part.

 # Safety
 `f` must be a live handle.
 */
int32_t cmx_energy_all_roots_positive(const struct CmxEnergyFit *f);

/*
 Number of negative real roots.

 # Safety
 `f` must be a live handle.
 */
uint32_t cmx_energy_negative_root_count(const struct CmxEnergyFit *f);

/*
 Root b_idx of the expansion.

 # Safety
 `f` must be a live handle; `re`/`im` valid.
 */
enum CmxStatus cmx_energy_root(const struct CmxEnergyFit *f, uint32_t idx, double *re, double *im);

/*
 Build the generating-function fit at the given order.

 # Safety
 `m` must be a live handle; `out` valid. Release with `cmx_zfit_free`.
 */
enum CmxStatus cmx_zfit(const struct CmxMoments *m, uint32_t order, struct CmxZFit **out);

/*
 # Safety
 `f` must come from `cmx_zfit` and not be freed twice.
 */
void cmx_zfit_free(struct CmxZFit *f);

/*
 Amplitude/exponent pair (ascending exponents).

 # Safety
 `f` must be a live handle; `amplitude`/`exponent` valid.
 */
enum CmxStatus cmx_zfit_param(const struct CmxZFit *f,
                              uint32_t idx,
                              double *amplitude,
                              double *exponent);

/*
 U^(N)(t) = −Z_N′(t)/Z_N(t); fails with `Pole` where Z_N vanishes.

 # Safety
 `f` must be a live handle; `out` valid.
 */
enum CmxStatus cmx_zfit_eval_u(const struct CmxZFit *f, double t, double *out);

/*
 |Z_N(iτ)|².

 # Safety
 `f` must be a live handle.
 */
double cmx_zfit_correlation_sq(const struct CmxZFit *f, double tau);

/*
 Exact E(t) for the oscillator with the widened quadratic trial.
 */
double cmx_exact_e_ho(double t);

/*
 Exact |C(τ)|² for the oscillator with the width-1 Gaussian trial.
 */
double cmx_exact_c2_ho(double tau);

/*
 Static name for a status code.
 */
const char *cmx_status_name(enum CmxStatus status);

/*
 Detail message for the most recent failure on this thread. Valid until
 the next failing call on the same thread.
 */
const char *cmx_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRONY_CMX_H */
