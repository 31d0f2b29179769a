#ifndef LEVENT_LEVENT_H
#define LEVENT_LEVENT_H

/* C interface to the levent steady-state entanglement library.
 *
 * Every function returns a levent_status; on failure a description is
 * available from levent_last_error() on the calling thread. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function. Passing NULL to a destroy function is a no-op.
 *
 * Rates in parameter sets are frequency/2pi in kHz (see levent_params_set).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LEVENT_BUILDING_LIBRARY)
#    define LEVENT_API __declspec(dllexport)
#  else
#    define LEVENT_API __declspec(dllimport)
#  endif
#else
#  define LEVENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum levent_status {
  LEVENT_OK = 0,
  LEVENT_ERR_INVALID_ARGUMENT = 1,
  LEVENT_ERR_DIMENSION = 2,
  LEVENT_ERR_INVALID_STATE = 3,
  LEVENT_ERR_UNSTABLE = 4,
  LEVENT_ERR_UNSUPPORTED_VARIANT = 5,
  LEVENT_ERR_ILL_DEFINED_MODE = 6,
  LEVENT_ERR_DEGENERATE_INPUT = 7,
  LEVENT_ERR_STEP_SIZE = 8,
  LEVENT_ERR_CONFIG = 9,
  LEVENT_ERR_IO = 10,
  LEVENT_ERR_PARTIAL = 11, /* sweep finished but some rows failed */
  LEVENT_ERR_INTERNAL = 12
} levent_status;

typedef struct levent_params levent_params;
typedef struct levent_sweep levent_sweep;

/* Measures for one point. Absent values are NaN: every measure when
 * stable == 0, nrf when the state holds no phonons. */
typedef struct levent_report {
  int stable;
  double log_negativity;
  double epr_variance;
  double nrf;
  double purity;
  double n1;
  double n2;
  double min_pt_symplectic;
  int k_used; /* Floquet truncation, 0 for constant drift */
  double residual;
  char error[256];
} levent_report;

typedef struct levent_check {
  int passed;
  double deviation;
  double tolerance;
  char detail[256];
} levent_check;

LEVENT_API const char* levent_version(void);
LEVENT_API const char* levent_status_string(levent_status status);
/* Thread-local; valid until the next failing call on the same thread. */
LEVENT_API const char* levent_last_error(void);

/* Parameter sets. Keys: lambda1_khz lambda2_khz g1_khz g2_khz kappa1_khz
 * kappa2_khz omega1_khz omega2_khz delta12_khz q1 q2 n1 n2, the shorthands
 * q and n, and variant. */
LEVENT_API levent_status levent_params_create(levent_params** out);
LEVENT_API levent_status levent_params_load(const char* path, levent_params** out);
LEVENT_API levent_status levent_params_clone(const levent_params* p, levent_params** out);
LEVENT_API void levent_params_destroy(levent_params* p);
LEVENT_API levent_status levent_params_set(levent_params* p, const char* key, const char* value);
LEVENT_API levent_status levent_params_get(const levent_params* p, const char* key, double* out);
/* Checks the set resolves to valid physical parameters. */
LEVENT_API levent_status levent_params_validate(const levent_params* p);

/* variant: NULL uses the set's "variant" key, else full-rwa.
 * truncation <= 0 selects the automatic convergence ladder.
 * Returns LEVENT_ERR_UNSTABLE (report->stable == 0) for non-Hurwitz drift. */
LEVENT_API levent_status levent_run_point(const levent_params* p, const char* variant, int truncation,
                                          levent_report* report);
/* Writes the joint steady-state covariance in the text format; "-" is stdout. */
LEVENT_API levent_status levent_write_point_covariance(const levent_params* p, const char* variant, int truncation,
                                                       const char* path);

/* A sweep handle holds one or more series and, after levent_sweep_run, their rows. */
LEVENT_API levent_status levent_sweep_create(const levent_params* fixed, const char* variant, const char* parameter,
                                             const double* grid, size_t grid_len, int truncation,
                                             const char* series, levent_sweep** out);
LEVENT_API levent_status levent_preset_create(const char* name, levent_sweep** out);
LEVENT_API void levent_sweep_destroy(levent_sweep* s);
/* threads == 0 uses the hardware concurrency. Returns LEVENT_ERR_PARTIAL when
 * some rows failed; unstable rows are results, not failures. */
LEVENT_API levent_status levent_sweep_run(levent_sweep* s, unsigned threads);
LEVENT_API size_t levent_sweep_row_count(const levent_sweep* s);
LEVENT_API levent_status levent_sweep_row(const levent_sweep* s, size_t index, double* value, levent_report* report);
LEVENT_API levent_status levent_sweep_write_csv(const levent_sweep* s, const char* path);
LEVENT_API levent_status levent_sweep_write_svg(const levent_sweep* s, const char* path, const char* title);
/* Renders an existing sweep CSV. */
LEVENT_API levent_status levent_plot_csv(const char* csv_path, const char* svg_path, const char* title);
LEVENT_API const char* levent_preset_name(size_t index); /* NULL past the end */

/* Feasibility estimates (SI units, rates in rad/s). */
LEVENT_API levent_status levent_thermal_occupancy(double temperature_k, double omega, double* out);
LEVENT_API levent_status levent_phase_noise_heating(double g, double n_phot, double kappa, double s_phidot,
                                                    double* out);
LEVENT_API levent_status levent_tweezer_intensity(double power_w, double waist_m, double* out_w_per_cm2);

/* Oracle comparisons. p == NULL uses the default parameter set. */
LEVENT_API levent_status levent_check_floquet(const levent_params* p, const char* variant, int truncation,
                                              levent_check* out);
LEVENT_API levent_status levent_check_monte_carlo(size_t n_traj, uint64_t seed, unsigned threads, levent_check* out);
LEVENT_API levent_status levent_check_moments(size_t n_cases, size_t n_samples, uint64_t seed, levent_check* out);

#ifdef __cplusplus
}
#endif

#endif /* LEVENT_LEVENT_H */
