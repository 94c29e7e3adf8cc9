#ifndef SAESPEC_H
#define SAESPEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SaespecBranch {
  SAESPEC_BRANCH_STANDARD = 0,
  SAESPEC_BRANCH_ADDITIONAL = 1,
  SAESPEC_BRANCH_MIXED = 2,
  SAESPEC_BRANCH_FALL_TOWER = 3,
} SaespecBranch;

typedef enum SaespecRegime {
  SAESPEC_REGIME_STANDARD_ONLY = 0,
  SAESPEC_REGIME_TWO_BRANCH = 1,
  SAESPEC_REGIME_LOG_CASE = 2,
  SAESPEC_REGIME_FALL_TO_CENTER = 3,
} SaespecRegime;

// Result codes shared by every entry point.
typedef enum SaespecStatus {
  SAESPEC_STATUS_OK = 0,
  // A required pointer argument was null.
  SAESPEC_STATUS_NULL_ARGUMENT = 1,
  // Inputs outside the domain of the operation.
  SAESPEC_STATUS_INVALID_ARGUMENT = 2,
  // The problem's regime or branch does not support the request.
  SAESPEC_STATUS_REGIME = 3,
  // The requested level does not exist.
  SAESPEC_STATUS_NO_LEVEL = 4,
  // Cancellation, overflow or a failed root search.
  SAESPEC_STATUS_NUMERICAL = 5,
  // Index past the end of a spectrum.
  SAESPEC_STATUS_OUT_OF_RANGE = 6,
  // A Rust panic was caught at the boundary.
  SAESPEC_STATUS_PANIC = 7,
} SaespecStatus;

// Opaque radial problem.
typedef struct SaespecProblem SaespecProblem;

// Opaque computed spectrum.
typedef struct SaespecSpectrum SaespecSpectrum;

// One level. `lambda` is NaN when the solver has none, `nodes` is -1 when
// no integration counted them.
typedef struct SaespecState {
  double energy;
  int64_t n_r;
  enum SaespecBranch branch;
  double lambda;
  int64_t nodes;
} SaespecState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next call into the library on the same thread.
const char *saespec_last_error(void);

// Library version as a static NUL-terminated string.
const char *saespec_version(void);

// Problem from the inverse-square strength `v0`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_problem_new(double m,
                                       uint32_t l,
                                       double v0,
                                       double coulomb,
                                       struct SaespecProblem **out);

// Problem with `v0` chosen so the exponent parameter equals `p`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_problem_with_p(double m,
                                          uint32_t l,
                                          double p,
                                          double coulomb,
                                          struct SaespecProblem **out);

// # Safety
// `problem` must come from a `saespec_problem_*` constructor, or be null.
void saespec_problem_free(struct SaespecProblem *problem);

// Regime of the problem and its `P` (NaN outside the power-law regimes).
//
// # Safety
// Pointers must be valid; `p_out` may be null.
enum SaespecStatus saespec_problem_classify(const struct SaespecProblem *problem,
                                            enum SaespecRegime *regime_out,
                                            double *p_out);

// Lowest `count` levels for boundary parameter `tau` (use
// [`saespec_solve_theta`] for the infinite case).
//
// # Safety
// `problem` must be a live handle and `out` valid for writes.
enum SaespecStatus saespec_solve_tau(const struct SaespecProblem *problem,
                                     double tau,
                                     size_t count,
                                     struct SaespecSpectrum **out);

// As [`saespec_solve_tau`] with `tau = tan(theta)`.
//
// # Safety
// `problem` must be a live handle and `out` valid for writes.
enum SaespecStatus saespec_solve_theta(const struct SaespecProblem *problem,
                                       double theta,
                                       size_t count,
                                       struct SaespecSpectrum **out);

// # Safety
// `spectrum` must come from a solve call, or be null.
void saespec_spectrum_free(struct SaespecSpectrum *spectrum);

// Number of levels, ordered by energy.
//
// # Safety
// Pointers must be valid.
enum SaespecStatus saespec_spectrum_len(const struct SaespecSpectrum *spectrum, size_t *len_out);

// # Safety
// Pointers must be valid.
enum SaespecStatus saespec_spectrum_state(const struct SaespecSpectrum *spectrum,
                                          size_t index,
                                          struct SaespecState *state_out);

// Integrates at `energy` and reports the node count and the scaled
// matching defect, which vanishes at an eigenvalue.
//
// # Safety
// Pointers must be valid; either output may be null.
enum SaespecStatus saespec_oracle_probe(const struct SaespecProblem *problem,
                                        double tau,
                                        double energy,
                                        uint32_t *nodes_out,
                                        double *defect_out);

// Gamma function.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_gamma(double x, double *out);

// Kummer's `M(a, b, z)` for `z >= 0`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_kummer_m(double a, double b, double z, double *out);

// Tricomi's `U(a, b, z)` for `z > 0`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_tricomi_u(double a, double b, double z, double *out);

// Whittaker `W_{lambda, mu}(x)`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_whittaker_w(double lambda, double mu, double x, double *out);

// Modified Bessel `I_nu(x)`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_bessel_i(double nu, double x, double *out);

// Modified Bessel `K_nu(x)`.
//
// # Safety
// `out` must be valid for writes.
enum SaespecStatus saespec_bessel_k(double nu, double x, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SAESPEC_H */
