#ifndef ORBITADM_H
#define ORBITADM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum OrbitadmStatus {
  ORBITADM_STATUS_OK = 0,
  // Parse or validation failure in the input.
  ORBITADM_STATUS_INPUT = 1,
  // The algebra is not solvable or not exponential.
  ORBITADM_STATUS_PRECONDITION = 2,
  // Probabilistic and symbolic ranks disagree.
  ORBITADM_STATUS_DISAGREEMENT = 3,
  ORBITADM_STATUS_NULL_POINTER = 4,
  ORBITADM_STATUS_INVALID_ARGUMENT = 5,
  // A panic was caught at the boundary.
  ORBITADM_STATUS_PANIC = 6,
} OrbitadmStatus;

typedef enum OrbitadmSymbolic {
  ORBITADM_SYMBOLIC_OFF = 0,
  ORBITADM_SYMBOLIC_AUTO = 1,
  ORBITADM_SYMBOLIC_REQUIRED = 2,
} OrbitadmSymbolic;

typedef enum OrbitadmSpectral {
  ORBITADM_SPECTRAL_SINGULAR = 0,
  ORBITADM_SPECTRAL_ABSOLUTELY_CONTINUOUS = 1,
} OrbitadmSpectral;

typedef enum OrbitadmAdmissibility {
  ORBITADM_ADMISSIBILITY_NOT_ADMISSIBLE = 0,
  ORBITADM_ADMISSIBILITY_ADMISSIBLE = 1,
  ORBITADM_ADMISSIBILITY_CONJECTURALLY_NOT_ADMISSIBLE = 2,
} OrbitadmAdmissibility;

// A parsed problem: algebra, subalgebra generators and character values.
typedef struct OrbitadmProblem OrbitadmProblem;

// Result of `orbitadm_verdict`.
typedef struct OrbitadmReport OrbitadmReport;

// Analysis settings. Obtain defaults from `orbitadm_config_default`.
typedef struct OrbitadmConfig {
  size_t trials;
  uint64_t bound;
  uint64_t seed;
  size_t exp_samples;
  enum OrbitadmSymbolic symbolic;
  size_t symbolic_threshold;
  bool assume_exponential;
} OrbitadmConfig;

// Finite-difference Jacobian check at one chart point.
typedef struct OrbitadmJacobianSummary {
  double max_dev_topleft;
  double max_dev_topright;
  double max_dev_bottomright;
  size_t numerical_rank;
  size_t rank_m;
  size_t expected_rank;
} OrbitadmJacobianSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *orbitadm_version(void);

// Message for the last failed call on this thread, or an empty string.
// Valid until the next call into the library on this thread.
const char *orbitadm_last_error(void);

// Parses a problem from NUL-terminated source text.
//
// # Safety
// `source` must be a valid C string and `out` a valid pointer.
enum OrbitadmStatus orbitadm_problem_parse(const char *source, struct OrbitadmProblem **out);

// Loads a problem from the bundled corpus by name.
//
// # Safety
// `name` must be a valid C string and `out` a valid pointer.
enum OrbitadmStatus orbitadm_problem_from_corpus(const char *name, struct OrbitadmProblem **out);

// Releases a problem. Null is ignored.
//
// # Safety
// `p` must come from this library and not be freed twice.
void orbitadm_problem_free(struct OrbitadmProblem *p);

// Dimension of the algebra, or 0 for null.
//
// # Safety
// `p` must be null or a live problem.
size_t orbitadm_problem_dim(const struct OrbitadmProblem *p);

// Number of subalgebra generators, or 0 for null.
//
// # Safety
// `p` must be null or a live problem.
size_t orbitadm_problem_subalgebra_dim(const struct OrbitadmProblem *p);

struct OrbitadmConfig orbitadm_config_default(void);

// Runs the full analysis. A null `config` means the problem file's
// settings over the defaults.
//
// # Safety
// `p` must be a live problem, `config` null or valid, `out` valid.
enum OrbitadmStatus orbitadm_verdict(const struct OrbitadmProblem *p,
                                     const struct OrbitadmConfig *config,
                                     struct OrbitadmReport **out);

// Releases a report. Null is ignored.
//
// # Safety
// `r` must come from this library and not be freed twice.
void orbitadm_report_free(struct OrbitadmReport *r);

// # Safety
// `r` must be a live report.
enum OrbitadmSpectral orbitadm_report_spectral(const struct OrbitadmReport *r);

// # Safety
// `r` must be a live report.
enum OrbitadmAdmissibility orbitadm_report_admissibility(const struct OrbitadmReport *r);

// Whether the admissibility verdict is proved rather than conjectured.
//
// # Safety
// `r` must be a live report.
bool orbitadm_report_established(const struct OrbitadmReport *r);

// # Safety
// `r` must be a live report.
bool orbitadm_report_unimodular(const struct OrbitadmReport *r);

// Generic dimension of the subgroup orbits on the affine variety.
//
// # Safety
// `r` must be a live report.
size_t orbitadm_report_d_tau(const struct OrbitadmReport *r);

// # Safety
// `r` must be a live report.
size_t orbitadm_report_m(const struct OrbitadmReport *r);

// JSON rendering, owned by the report.
//
// # Safety
// `r` must be a live report.
const char *orbitadm_report_json(const struct OrbitadmReport *r);

// `key: value` text rendering, owned by the report.
//
// # Safety
// `r` must be a live report.
const char *orbitadm_report_text(const struct OrbitadmReport *r);

// Exact rank of the moment matrix at the chart point `num[i] / den[i]`.
//
// # Safety
// `num` and `den` must hold `len` values; `out_rank` must be valid.
enum OrbitadmStatus orbitadm_rank_at(const struct OrbitadmProblem *p,
                                     const int64_t *num,
                                     const int64_t *den,
                                     size_t len,
                                     size_t *out_rank);

// Finite-difference Jacobian of the chart map at `num[i] / den[i]`.
// Non-positive `step` or `rank_tol` select the defaults.
//
// # Safety
// `num` and `den` must hold `len` values; `out` must be valid.
enum OrbitadmStatus orbitadm_jacobian(const struct OrbitadmProblem *p,
                                      const int64_t *num,
                                      const int64_t *den,
                                      size_t len,
                                      double step,
                                      double rank_tol,
                                      struct OrbitadmJacobianSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITADM_H */
