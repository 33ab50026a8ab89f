/*
 * Copyright 2026 The tdoamat Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libtdoamat.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_destroy function (which accepts NULL). Every fallible call
 * returns a tdoa_status; on failure a description is available from
 * tdoa_last_error() until the next failing call on the same thread. Output
 * handles are only written on success. Times are in seconds, matrix buffers
 * are row-major n*n, indices are zero-based.
 */

#ifndef TDOAMAT_TDOAMAT_H_
#define TDOAMAT_TDOAMAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TDOAMAT_BUILDING_LIBRARY)
#    define TDOAMAT_API __declspec(dllexport)
#  else
#    define TDOAMAT_API __declspec(dllimport)
#  endif
#else
#  define TDOAMAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tdoa_status {
  TDOA_OK = 0,
  TDOA_ERR_INVALID_INPUT = 1,
  TDOA_ERR_DEGENERATE = 2,
  TDOA_ERR_NOT_RECOVERABLE = 3,
  TDOA_ERR_NOT_CONVERGED = 4,
  TDOA_ERR_LOCALIZATION_FAILED = 5,
  TDOA_ERR_IO = 6,
  TDOA_ERR_PARSE = 7,
  TDOA_ERR_INTERNAL = 8,
  TDOA_ERR_NULL_ARGUMENT = 9,
  TDOA_ERR_BUFFER_TOO_SMALL = 10
} tdoa_status;

typedef enum tdoa_format { TDOA_FORMAT_JSON = 0, TDOA_FORMAT_CSV = 1 } tdoa_format;

typedef enum tdoa_denoise_method {
  TDOA_DENOISE_CLOSED_FORM = 0,
  TDOA_DENOISE_ELEMENT_FORM = 1
} tdoa_denoise_method;

typedef enum tdoa_stop_rule {
  TDOA_STOP_OBJECTIVE_CHANGE = 0,
  TDOA_STOP_OBJECTIVE_LEVEL = 1
} tdoa_stop_rule;

typedef struct tdoa_matrix tdoa_matrix;
typedef struct tdoa_mask tdoa_mask;
typedef struct tdoa_outliers tdoa_outliers;

TDOAMAT_API const char* tdoa_version(void);
TDOAMAT_API const char* tdoa_last_error(void);
TDOAMAT_API const char* tdoa_status_string(tdoa_status status);

/* ---- TDOA matrices ---------------------------------------------------- */

TDOAMAT_API tdoa_status tdoa_matrix_zero(size_t n, tdoa_matrix** out);
TDOAMAT_API tdoa_status tdoa_matrix_from_toas(const double* toas, size_t n,
                                              tdoa_matrix** out);
/* Rejects asymmetry beyond 1e-9 s unless `symmetrize` is nonzero, in which
 * case the skew part (M - M^T) / 2 is used. */
TDOAMAT_API tdoa_status tdoa_matrix_from_entries(const double* entries, size_t n,
                                                 int symmetrize, tdoa_matrix** out);
/* JSON or CSV, detected from the content. */
TDOAMAT_API tdoa_status tdoa_matrix_load(const char* path, int symmetrize,
                                         tdoa_matrix** out);
TDOAMAT_API tdoa_status tdoa_matrix_save(const tdoa_matrix* m, const char* path,
                                         tdoa_format format);
/* Serialized text in *out, released with tdoa_string_free. */
TDOAMAT_API tdoa_status tdoa_matrix_serialize(const tdoa_matrix* m, tdoa_format format,
                                              char** out);
TDOAMAT_API void tdoa_string_free(char* s);
TDOAMAT_API void tdoa_matrix_destroy(tdoa_matrix* m);

TDOAMAT_API size_t tdoa_matrix_size(const tdoa_matrix* m);
/* Copies n*n entries; capacity is in doubles. */
TDOAMAT_API tdoa_status tdoa_matrix_entries(const tdoa_matrix* m, double* out,
                                            size_t capacity);

/* x is projected onto the hyperplane orthogonal to (1, ..., 1) first. */
TDOAMAT_API tdoa_status tdoa_compose(const double* x, size_t n, tdoa_matrix** out);
/* x = M 1 / sqrt(n), n doubles. */
TDOAMAT_API tdoa_status tdoa_decompose(const tdoa_matrix* m, double* x_out,
                                       size_t capacity);
/* TDOA_ERR_DEGENERATE for the zero matrix. */
TDOAMAT_API tdoa_status tdoa_svd_params(const tdoa_matrix* m, double* u_hat_out,
                                        size_t capacity, double* sigma_out);
TDOAMAT_API tdoa_status tdoa_is_consistent(const tdoa_matrix* m, double tol,
                                           int* consistent_out, double* residual_out);

/* ---- Denoising -------------------------------------------------------- */

TDOAMAT_API tdoa_status tdoa_denoise(const tdoa_matrix* m_tilde,
                                     tdoa_denoise_method method, tdoa_matrix** out);

typedef struct tdoa_robust_options {
  size_t k;
  double eps;
  size_t max_iter;
  tdoa_stop_rule stop_rule;
  int refit_support; /* nonzero: exact refit on the final outlier support */
  int grow_budget;   /* nonzero: stages with budgets 1..k, warm-started */
} tdoa_robust_options;

/* k = 0, eps = 1e-10, max_iter = 1000, objective-change stopping, refit and
   budget growth on. */
TDOAMAT_API void tdoa_robust_options_init(tdoa_robust_options* options);

typedef struct tdoa_robust_report {
  size_t iterations;
  int converged;
  double final_objective;
  size_t outlier_pairs;
  int budget_clamped;
  int refit_applied;
} tdoa_robust_report;

/* Non-convergence is reported in `report`, not as an error status. Either
 * output handle pointer may be NULL if that result is not wanted. */
TDOAMAT_API tdoa_status tdoa_robust_denoise(const tdoa_matrix* m_tilde,
                                            const tdoa_robust_options* options,
                                            tdoa_matrix** m_out,
                                            tdoa_outliers** s_out,
                                            tdoa_robust_report* report);

TDOAMAT_API void tdoa_outliers_destroy(tdoa_outliers* s);
TDOAMAT_API size_t tdoa_outliers_size(const tdoa_outliers* s);
/* Nonzero entries, both orientations counted. */
TDOAMAT_API size_t tdoa_outliers_nonzero_count(const tdoa_outliers* s);
TDOAMAT_API tdoa_status tdoa_outliers_entries(const tdoa_outliers* s, double* out,
                                              size_t capacity);
TDOAMAT_API tdoa_status tdoa_outliers_save(const tdoa_outliers* s, const char* path);
TDOAMAT_API tdoa_status tdoa_outliers_serialize(const tdoa_outliers* s, char** out);

/* ---- Missing data ----------------------------------------------------- */

TDOAMAT_API tdoa_status tdoa_mask_full(size_t n, tdoa_mask** out);
/* `pairs` holds `count` (i, j) index pairs, 2 * count values. */
TDOAMAT_API tdoa_status tdoa_mask_from_missing_pairs(size_t n, const size_t* pairs,
                                                     size_t count, tdoa_mask** out);
TDOAMAT_API tdoa_status tdoa_mask_load(const char* path, tdoa_mask** out);
TDOAMAT_API tdoa_status tdoa_mask_save(const tdoa_mask* mask, const char* path);
TDOAMAT_API void tdoa_mask_destroy(tdoa_mask* mask);
TDOAMAT_API size_t tdoa_mask_size(const tdoa_mask* mask);
TDOAMAT_API size_t tdoa_mask_missing_pairs(const tdoa_mask* mask);

TDOAMAT_API tdoa_status tdoa_mask_recoverability(const tdoa_mask* mask,
                                                 int* recoverable_out,
                                                 double* condition_out);

/* TDOA_ERR_NOT_RECOVERABLE for a singular mask unless `pseudo` is nonzero. */
TDOAMAT_API tdoa_status tdoa_complete(const tdoa_matrix* m_tilde,
                                      const tdoa_mask* mask, int pseudo,
                                      tdoa_matrix** out);
TDOAMAT_API tdoa_status tdoa_robust_complete(const tdoa_matrix* m_tilde,
                                             const tdoa_mask* mask,
                                             const tdoa_robust_options* options,
                                             int pseudo, tdoa_matrix** m_out,
                                             tdoa_outliers** s_out,
                                             tdoa_robust_report* report);

/* ---- Simulation and evaluation ---------------------------------------- */

typedef struct tdoa_simulation_options {
  size_t n;
  double sensor_cube_side; /* meters */
  double source_cube_side; /* meters */
  double speed;            /* m/s */
  double noise_sigma;      /* seconds */
  size_t outlier_count;
  double outlier_sigma; /* seconds */
  double missing_fraction;
  uint64_t seed;
} tdoa_simulation_options;

/* n = 10, cubes of 1 m and 2 m, 343.313 m/s, no corruption,
 * outlier_sigma = 1e-4 s, seed 0. */
TDOAMAT_API void tdoa_simulation_options_init(tdoa_simulation_options* options);

/* Draws a scene, corrupts its TDOA matrix and writes the trial bundle
 * {seed, scene, truth, corrupted, mask, injected_outliers} as JSON. */
TDOAMAT_API tdoa_status tdoa_simulate_trial(const tdoa_simulation_options* options,
                                            const char* out_path);

/* As tdoa_simulate_trial, returning the JSON in *out (tdoa_string_free). */
TDOAMAT_API tdoa_status tdoa_simulate_trial_json(const tdoa_simulation_options* options,
                                                 char** out);

/* SNR in dB of the estimate's first column; +inf for an exact estimate. */
TDOAMAT_API tdoa_status tdoa_snr_db(const tdoa_matrix* truth,
                                    const tdoa_matrix* estimate, double* out);

/* delays: n - 1 values tau_i - tau_1; sensors: 3 * n coordinates. */
TDOAMAT_API tdoa_status tdoa_localize(const double* delays, const double* sensors,
                                      size_t n, double speed, double position_out[3]);

typedef struct tdoa_sweep_report {
  size_t rows;
  size_t failures;
  size_t not_converged;
} tdoa_sweep_report;

/* Runs the sweep described by the JSON config at `config_path` and writes
 * snr_db.csv and loc_error_mm.csv (or sweep.json) into `out_dir`, which must
 * exist. seed_override is used when has_seed_override is nonzero. jobs = 0
 * uses every hardware thread; jobs = 1 is bit-for-bit reproducible. */
TDOAMAT_API tdoa_status tdoa_sweep_run(const char* config_path, const char* out_dir,
                                       unsigned jobs, tdoa_format format,
                                       int has_seed_override, uint64_t seed_override,
                                       tdoa_sweep_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TDOAMAT_TDOAMAT_H_ */
