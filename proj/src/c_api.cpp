// Copyright 2026 The tdoamat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdoamat/tdoamat.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "tdoamat/completion.hpp"
#include "tdoamat/denoise.hpp"
#include "tdoamat/error.hpp"
#include "tdoamat/io.hpp"
#include "tdoamat/localize.hpp"
#include "tdoamat/robust.hpp"
#include "tdoamat/scene.hpp"
#include "tdoamat/sweep.hpp"
#include "tdoamat/tdoa_matrix.hpp"

struct tdoa_matrix {
  tdoamat::TdoaMatrix value;
};

struct tdoa_mask {
  tdoamat::Mask value;
};

struct tdoa_outliers {
  tdoamat::OutlierMatrix value;
};

namespace {

using tdoamat::Error;
using tdoamat::ErrorCode;

thread_local std::string g_last_error;

tdoa_status Fail(tdoa_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
tdoa_status Guard(Body&& body) {
  try {
    body();
    return TDOA_OK;
  } catch (const Error& e) {
    return Fail(static_cast<tdoa_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TDOA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TDOA_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(TDOA_ERR_INTERNAL, "unknown error");
  }
}

#define TDOA_REQUIRE(ptr)                                              \
  do {                                                                 \
    if ((ptr) == nullptr) {                                            \
      return Fail(TDOA_ERR_NULL_ARGUMENT, "null argument: " #ptr);     \
    }                                                                  \
  } while (0)

tdoa_status CopyOut(const Eigen::MatrixXd& m, double* out, size_t capacity) {
  const auto n = static_cast<size_t>(m.rows());
  if (capacity < n * n) {
    return Fail(TDOA_ERR_BUFFER_TOO_SMALL, "output buffer holds fewer than n*n values");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) *out++ = m(i, j);
  }
  return TDOA_OK;
}

tdoa_status CopyOut(const Eigen::VectorXd& v, double* out, size_t capacity) {
  if (capacity < static_cast<size_t>(v.size())) {
    return Fail(TDOA_ERR_BUFFER_TOO_SMALL, "output buffer holds fewer than n values");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v(i);
  return TDOA_OK;
}

tdoamat::RobustOptions ToOptions(const tdoa_robust_options* o) {
  tdoamat::RobustOptions options;
  options.k = o->k;
  options.eps = o->eps;
  options.max_iter = o->max_iter;
  options.stop_rule = o->stop_rule == TDOA_STOP_OBJECTIVE_LEVEL
                          ? tdoamat::StopRule::kObjectiveLevel
                          : tdoamat::StopRule::kObjectiveChange;
  options.refit_support = o->refit_support != 0;
  options.grow_budget = o->grow_budget != 0;
  return options;
}

void FillReport(const tdoamat::RobustResult& r, tdoa_robust_report* report) {
  if (report == nullptr) return;
  report->iterations = r.iterations;
  report->converged = r.converged ? 1 : 0;
  report->final_objective = r.objective_trace.empty() ? 0.0 : r.objective_trace.back();
  report->outlier_pairs = r.s_star.Support().size();
  report->budget_clamped = r.s_star.budget_clamped() ? 1 : 0;
  report->refit_applied = r.refit_applied ? 1 : 0;
}

char* DupString(const std::string& text) {
  char* copy = static_cast<char*>(std::malloc(text.size() + 1));
  if (copy == nullptr) throw std::bad_alloc();
  std::memcpy(copy, text.c_str(), text.size() + 1);
  return copy;
}

tdoamat::MatrixFormat ToFormat(tdoa_format format) {
  return format == TDOA_FORMAT_CSV ? tdoamat::MatrixFormat::kCsv
                                   : tdoamat::MatrixFormat::kJson;
}

std::string SimulateJson(const tdoa_simulation_options* options) {
  tdoamat::Scene scene = tdoamat::RandomScene(
      options->n, options->sensor_cube_side, options->source_cube_side, options->seed);
  scene.speed = options->speed;
  tdoamat::CorruptionSpec spec;
  spec.noise_sigma = options->noise_sigma;
  spec.outlier_count = options->outlier_count;
  spec.outlier_sigma = options->outlier_sigma;
  spec.missing_fraction = options->missing_fraction;
  spec.seed = options->seed;
  return tdoamat::TrialToJson(tdoamat::SimulateTrial(scene, spec));
}

void EmitRobust(tdoamat::RobustResult&& r, tdoa_matrix** m_out, tdoa_outliers** s_out,
                tdoa_robust_report* report) {
  FillReport(r, report);
  if (m_out != nullptr) *m_out = new tdoa_matrix{std::move(r.m_star)};
  if (s_out != nullptr) *s_out = new tdoa_outliers{std::move(r.s_star)};
}

}  // namespace

extern "C" {

const char* tdoa_version(void) { return "0.1.0"; }

const char* tdoa_last_error(void) { return g_last_error.c_str(); }

const char* tdoa_status_string(tdoa_status status) {
  switch (status) {
    case TDOA_OK: return "ok";
    case TDOA_ERR_INVALID_INPUT: return "invalid input";
    case TDOA_ERR_DEGENERATE: return "degenerate input";
    case TDOA_ERR_NOT_RECOVERABLE: return "missing data not recoverable";
    case TDOA_ERR_NOT_CONVERGED: return "not converged";
    case TDOA_ERR_LOCALIZATION_FAILED: return "localization failed";
    case TDOA_ERR_IO: return "i/o error";
    case TDOA_ERR_PARSE: return "parse error";
    case TDOA_ERR_INTERNAL: return "internal error";
    case TDOA_ERR_NULL_ARGUMENT: return "null argument";
    case TDOA_ERR_BUFFER_TOO_SMALL: return "buffer too small";
  }
  return "unknown status";
}

tdoa_status tdoa_matrix_zero(size_t n, tdoa_matrix** out) {
  TDOA_REQUIRE(out);
  return Guard([&] {
    *out = new tdoa_matrix{tdoamat::TdoaMatrix(static_cast<Eigen::Index>(n))};
  });
}

tdoa_status tdoa_matrix_from_toas(const double* toas, size_t n, tdoa_matrix** out) {
  TDOA_REQUIRE(toas);
  TDOA_REQUIRE(out);
  return Guard([&] {
    const Eigen::Map<const Eigen::VectorXd> v(toas, static_cast<Eigen::Index>(n));
    *out = new tdoa_matrix{tdoamat::FromToas(v)};
  });
}

tdoa_status tdoa_matrix_from_entries(const double* entries, size_t n, int symmetrize,
                                     tdoa_matrix** out) {
  TDOA_REQUIRE(entries);
  TDOA_REQUIRE(out);
  return Guard([&] {
    const auto dim = static_cast<Eigen::Index>(n);
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                         Eigen::RowMajor>>
        raw(entries, dim, dim);
    const Eigen::MatrixXd m = raw;
    *out = new tdoa_matrix{symmetrize ? tdoamat::TdoaMatrix::SkewPart(m)
                                      : tdoamat::TdoaMatrix::FromEntries(m)};
  });
}

tdoa_status tdoa_matrix_load(const char* path, int symmetrize, tdoa_matrix** out) {
  TDOA_REQUIRE(path);
  TDOA_REQUIRE(out);
  return Guard([&] {
    tdoamat::ParseOptions options;
    options.symmetrize = symmetrize != 0;
    *out = new tdoa_matrix{tdoamat::LoadMatrix(path, options)};
  });
}

tdoa_status tdoa_matrix_save(const tdoa_matrix* m, const char* path,
                             tdoa_format format) {
  TDOA_REQUIRE(m);
  TDOA_REQUIRE(path);
  return Guard([&] {
    tdoamat::SaveMatrix(m->value, path, ToFormat(format));
  });
}

tdoa_status tdoa_matrix_serialize(const tdoa_matrix* m, tdoa_format format,
                                  char** out) {
  TDOA_REQUIRE(m);
  TDOA_REQUIRE(out);
  return Guard(
      [&] { *out = DupString(tdoamat::FormatMatrix(m->value, ToFormat(format))); });
}

void tdoa_string_free(char* s) { std::free(s); }

void tdoa_matrix_destroy(tdoa_matrix* m) { delete m; }

size_t tdoa_matrix_size(const tdoa_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->value.size());
}

tdoa_status tdoa_matrix_entries(const tdoa_matrix* m, double* out, size_t capacity) {
  TDOA_REQUIRE(m);
  TDOA_REQUIRE(out);
  return CopyOut(m->value.entries(), out, capacity);
}

tdoa_status tdoa_compose(const double* x, size_t n, tdoa_matrix** out) {
  TDOA_REQUIRE(x);
  TDOA_REQUIRE(out);
  return Guard([&] {
    const Eigen::Map<const Eigen::VectorXd> v(x, static_cast<Eigen::Index>(n));
    *out = new tdoa_matrix{tdoamat::Compose(v)};
  });
}

tdoa_status tdoa_decompose(const tdoa_matrix* m, double* x_out, size_t capacity) {
  TDOA_REQUIRE(m);
  TDOA_REQUIRE(x_out);
  return CopyOut(tdoamat::Decompose(m->value).x, x_out, capacity);
}

tdoa_status tdoa_svd_params(const tdoa_matrix* m, double* u_hat_out, size_t capacity,
                            double* sigma_out) {
  TDOA_REQUIRE(m);
  TDOA_REQUIRE(u_hat_out);
  TDOA_REQUIRE(sigma_out);
  tdoamat::SvdPair svd;
  const tdoa_status st = Guard([&] { svd = tdoamat::SvdParams(m->value); });
  if (st != TDOA_OK) return st;
  const tdoa_status copied = CopyOut(svd.u_hat, u_hat_out, capacity);
  if (copied == TDOA_OK) *sigma_out = svd.sigma;
  return copied;
}

tdoa_status tdoa_is_consistent(const tdoa_matrix* m, double tol, int* consistent_out,
                               double* residual_out) {
  TDOA_REQUIRE(m);
  TDOA_REQUIRE(consistent_out);
  return Guard([&] {
    const tdoamat::ConsistencyReport r = tdoamat::IsConsistent(m->value, tol);
    *consistent_out = r.consistent ? 1 : 0;
    if (residual_out != nullptr) *residual_out = r.residual;
  });
}

tdoa_status tdoa_denoise(const tdoa_matrix* m_tilde, tdoa_denoise_method method,
                         tdoa_matrix** out) {
  TDOA_REQUIRE(m_tilde);
  TDOA_REQUIRE(out);
  return Guard([&] {
    *out = new tdoa_matrix{tdoamat::Denoise(
        m_tilde->value, method == TDOA_DENOISE_ELEMENT_FORM
                            ? tdoamat::DenoiseMethod::kElementForm
                            : tdoamat::DenoiseMethod::kClosedForm)};
  });
}

void tdoa_robust_options_init(tdoa_robust_options* options) {
  if (options == nullptr) return;
  const tdoamat::RobustOptions defaults;
  options->k = defaults.k;
  options->eps = defaults.eps;
  options->max_iter = defaults.max_iter;
  options->stop_rule = TDOA_STOP_OBJECTIVE_CHANGE;
  options->refit_support = defaults.refit_support ? 1 : 0;
  options->grow_budget = defaults.grow_budget ? 1 : 0;
}

tdoa_status tdoa_robust_denoise(const tdoa_matrix* m_tilde,
                                const tdoa_robust_options* options,
                                tdoa_matrix** m_out, tdoa_outliers** s_out,
                                tdoa_robust_report* report) {
  TDOA_REQUIRE(m_tilde);
  TDOA_REQUIRE(options);
  return Guard([&] {
    EmitRobust(tdoamat::RobustDenoise(m_tilde->value, ToOptions(options)), m_out,
               s_out, report);
  });
}

void tdoa_outliers_destroy(tdoa_outliers* s) { delete s; }

size_t tdoa_outliers_size(const tdoa_outliers* s) {
  return s == nullptr ? 0 : static_cast<size_t>(s->value.size());
}

size_t tdoa_outliers_nonzero_count(const tdoa_outliers* s) {
  return s == nullptr ? 0 : s->value.NonZeroCount();
}

tdoa_status tdoa_outliers_entries(const tdoa_outliers* s, double* out,
                                  size_t capacity) {
  TDOA_REQUIRE(s);
  TDOA_REQUIRE(out);
  return CopyOut(s->value.entries(), out, capacity);
}

tdoa_status tdoa_outliers_save(const tdoa_outliers* s, const char* path) {
  TDOA_REQUIRE(s);
  TDOA_REQUIRE(path);
  return Guard([&] { tdoamat::WriteFile(path, tdoamat::OutliersToJson(s->value)); });
}

tdoa_status tdoa_outliers_serialize(const tdoa_outliers* s, char** out) {
  TDOA_REQUIRE(s);
  TDOA_REQUIRE(out);
  return Guard([&] { *out = DupString(tdoamat::OutliersToJson(s->value)); });
}

tdoa_status tdoa_mask_full(size_t n, tdoa_mask** out) {
  TDOA_REQUIRE(out);
  return Guard([&] {
    *out = new tdoa_mask{tdoamat::Mask::Full(static_cast<Eigen::Index>(n))};
  });
}

tdoa_status tdoa_mask_from_missing_pairs(size_t n, const size_t* pairs, size_t count,
                                         tdoa_mask** out) {
  TDOA_REQUIRE(out);
  if (count > 0) TDOA_REQUIRE(pairs);
  return Guard([&] {
    std::vector<tdoamat::IndexPair> missing;
    for (size_t p = 0; p < count; ++p) {
      missing.push_back({static_cast<Eigen::Index>(pairs[2 * p]),
                         static_cast<Eigen::Index>(pairs[2 * p + 1])});
    }
    *out = new tdoa_mask{
        tdoamat::Mask::FromMissingPairs(static_cast<Eigen::Index>(n), missing)};
  });
}

tdoa_status tdoa_mask_load(const char* path, tdoa_mask** out) {
  TDOA_REQUIRE(path);
  TDOA_REQUIRE(out);
  return Guard([&] { *out = new tdoa_mask{tdoamat::LoadMask(path)}; });
}

tdoa_status tdoa_mask_save(const tdoa_mask* mask, const char* path) {
  TDOA_REQUIRE(mask);
  TDOA_REQUIRE(path);
  return Guard([&] { tdoamat::WriteFile(path, tdoamat::MaskToJson(mask->value)); });
}

void tdoa_mask_destroy(tdoa_mask* mask) { delete mask; }

size_t tdoa_mask_size(const tdoa_mask* mask) {
  return mask == nullptr ? 0 : static_cast<size_t>(mask->value.size());
}

size_t tdoa_mask_missing_pairs(const tdoa_mask* mask) {
  return mask == nullptr ? 0 : mask->value.MissingPairCount();
}

tdoa_status tdoa_mask_recoverability(const tdoa_mask* mask, int* recoverable_out,
                                     double* condition_out) {
  TDOA_REQUIRE(mask);
  TDOA_REQUIRE(recoverable_out);
  return Guard([&] {
    const tdoamat::Recoverability r = tdoamat::CheckRecoverability(mask->value);
    *recoverable_out = r.recoverable ? 1 : 0;
    if (condition_out != nullptr) *condition_out = r.condition;
  });
}

tdoa_status tdoa_complete(const tdoa_matrix* m_tilde, const tdoa_mask* mask,
                          int pseudo, tdoa_matrix** out) {
  TDOA_REQUIRE(m_tilde);
  TDOA_REQUIRE(mask);
  TDOA_REQUIRE(out);
  return Guard([&] {
    *out = new tdoa_matrix{tdoamat::Complete(
        m_tilde->value, mask->value,
        pseudo ? tdoamat::CompletionMode::kPseudoInverse
               : tdoamat::CompletionMode::kUnique)};
  });
}

tdoa_status tdoa_robust_complete(const tdoa_matrix* m_tilde, const tdoa_mask* mask,
                                 const tdoa_robust_options* options, int pseudo,
                                 tdoa_matrix** m_out, tdoa_outliers** s_out,
                                 tdoa_robust_report* report) {
  TDOA_REQUIRE(m_tilde);
  TDOA_REQUIRE(mask);
  TDOA_REQUIRE(options);
  return Guard([&] {
    EmitRobust(tdoamat::RobustComplete(m_tilde->value, mask->value, ToOptions(options),
                                       pseudo ? tdoamat::CompletionMode::kPseudoInverse
                                              : tdoamat::CompletionMode::kUnique),
               m_out, s_out, report);
  });
}

void tdoa_simulation_options_init(tdoa_simulation_options* options) {
  if (options == nullptr) return;
  const tdoamat::CorruptionSpec spec;
  options->n = 10;
  options->sensor_cube_side = 1.0;
  options->source_cube_side = 2.0;
  options->speed = tdoamat::kDefaultPropagationSpeed;
  options->noise_sigma = spec.noise_sigma;
  options->outlier_count = spec.outlier_count;
  options->outlier_sigma = spec.outlier_sigma;
  options->missing_fraction = spec.missing_fraction;
  options->seed = 0;
}

tdoa_status tdoa_simulate_trial(const tdoa_simulation_options* options,
                                const char* out_path) {
  TDOA_REQUIRE(options);
  TDOA_REQUIRE(out_path);
  return Guard([&] { tdoamat::WriteFile(out_path, SimulateJson(options)); });
}

tdoa_status tdoa_simulate_trial_json(const tdoa_simulation_options* options,
                                     char** out) {
  TDOA_REQUIRE(options);
  TDOA_REQUIRE(out);
  return Guard([&] { *out = DupString(SimulateJson(options)); });
}

tdoa_status tdoa_snr_db(const tdoa_matrix* truth, const tdoa_matrix* estimate,
                        double* out) {
  TDOA_REQUIRE(truth);
  TDOA_REQUIRE(estimate);
  TDOA_REQUIRE(out);
  return Guard([&] { *out = tdoamat::SnrDb(truth->value, estimate->value); });
}

tdoa_status tdoa_localize(const double* delays, const double* sensors, size_t n,
                          double speed, double position_out[3]) {
  TDOA_REQUIRE(delays);
  TDOA_REQUIRE(sensors);
  TDOA_REQUIRE(position_out);
  return Guard([&] {
    if (n < 1) throw Error(ErrorCode::kInvalidInput, "no sensors");
    std::vector<Eigen::Vector3d> s(n);
    for (size_t i = 0; i < n; ++i) {
      s[i] = Eigen::Vector3d(sensors[3 * i], sensors[3 * i + 1], sensors[3 * i + 2]);
    }
    const Eigen::Map<const Eigen::VectorXd> column(delays,
                                                   static_cast<Eigen::Index>(n - 1));
    const Eigen::Vector3d p = tdoamat::LocalizeChanHo(column, s, speed);
    for (int a = 0; a < 3; ++a) position_out[a] = p(a);
  });
}

tdoa_status tdoa_sweep_run(const char* config_path, const char* out_dir,
                           unsigned jobs, tdoa_format format, int has_seed_override,
                           uint64_t seed_override, tdoa_sweep_report* report) {
  TDOA_REQUIRE(config_path);
  TDOA_REQUIRE(out_dir);
  return Guard([&] {
    tdoamat::SweepConfig config =
        tdoamat::ParseSweepConfig(tdoamat::ReadFile(config_path));
    if (has_seed_override) config.seed = seed_override;
    const tdoamat::SweepResult result = tdoamat::RunSweep(config, jobs);
    const std::string dir(out_dir);
    if (format == TDOA_FORMAT_JSON) {
      tdoamat::WriteFile(dir + "/sweep.json", tdoamat::SweepJson(result));
    } else {
      tdoamat::WriteFile(dir + "/snr_db.csv", tdoamat::SnrCsv(result));
      tdoamat::WriteFile(dir + "/loc_error_mm.csv", tdoamat::LocalizationCsv(result));
    }
    if (report != nullptr) {
      report->rows = result.rows.size();
      report->failures = 0;
      report->not_converged = 0;
      for (const tdoamat::SweepRow& r : result.rows) {
        report->failures += r.snr_failures;
        report->not_converged += r.not_converged;
      }
    }
  });
}

}  // extern "C"
