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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tdoamat/tdoamat.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotRecoverable = 3;
constexpr int kExitNotConverged = 4;

struct CliFailure {
  int exit_code;
};

int ExitCodeFor(tdoa_status status) {
  switch (status) {
    case TDOA_OK:
      return kExitOk;
    case TDOA_ERR_NOT_RECOVERABLE:
      return kExitNotRecoverable;
    case TDOA_ERR_NOT_CONVERGED:
      return kExitNotConverged;
    case TDOA_ERR_INVALID_INPUT:
    case TDOA_ERR_DEGENERATE:
    case TDOA_ERR_PARSE:
    case TDOA_ERR_NULL_ARGUMENT:
    case TDOA_ERR_BUFFER_TOO_SMALL:
      return kExitInvalid;
    default:
      return kExitFailure;
  }
}

void Check(tdoa_status status) {
  if (status == TDOA_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", tdoa_status_string(status),
               tdoa_last_error());
  throw CliFailure{ExitCodeFor(status)};
}

struct MatrixDeleter {
  void operator()(tdoa_matrix* m) const { tdoa_matrix_destroy(m); }
};
struct MaskDeleter {
  void operator()(tdoa_mask* m) const { tdoa_mask_destroy(m); }
};
struct OutliersDeleter {
  void operator()(tdoa_outliers* s) const { tdoa_outliers_destroy(s); }
};
using MatrixPtr = std::unique_ptr<tdoa_matrix, MatrixDeleter>;
using MaskPtr = std::unique_ptr<tdoa_mask, MaskDeleter>;
using OutliersPtr = std::unique_ptr<tdoa_outliers, OutliersDeleter>;

struct StringDeleter {
  void operator()(char* s) const { tdoa_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Writes text returned by the library to `path`, "-" meaning stdout.
void Emit(char* raw, const std::string& path) {
  StringPtr text(raw);
  const std::size_t size = std::strlen(text.get());
  if (path == "-") {
    std::fwrite(text.get(), 1, size, stdout);
    std::fflush(stdout);
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  const bool ok = f != nullptr && std::fwrite(text.get(), 1, size, f) == size;
  if (f != nullptr && std::fclose(f) != 0) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    throw CliFailure{kExitFailure};
  }
  if (!ok) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    throw CliFailure{kExitFailure};
  }
}

void EmitMatrix(const tdoa_matrix* m, tdoa_format format, const std::string& path) {
  char* text = nullptr;
  Check(tdoa_matrix_serialize(m, format, &text));
  Emit(text, path);
}

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::optional<std::string> format;

  tdoa_format MatrixFormat() const {
    return format.value_or("json") == "csv" ? TDOA_FORMAT_CSV : TDOA_FORMAT_JSON;
  }
};

struct MatrixIo {
  std::string in;
  std::string out = "-";
  bool symmetrize = false;

  MatrixPtr Load() const {
    tdoa_matrix* m = nullptr;
    Check(tdoa_matrix_load(in.c_str(), symmetrize ? 1 : 0, &m));
    return MatrixPtr(m);
  }
};

void AddMatrixIo(CLI::App* cmd, MatrixIo& io) {
  cmd->add_option("--in", io.in, "input matrix (JSON or CSV)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", io.out, "output path, '-' for stdout");
  cmd->add_flag("--symmetrize", io.symmetrize,
                "replace an asymmetric input by its skew part");
}

struct RobustCli {
  tdoa_robust_options options{};
  std::string stop = "change";
  std::string outliers_out;
  bool strict = false;
  bool no_refit = false;
  bool fixed_budget = false;

  RobustCli() { tdoa_robust_options_init(&options); }
};

void AddRobust(CLI::App* cmd, RobustCli& r) {
  cmd->add_option("--k", r.options.k, "outlier pair budget")->required();
  cmd->add_option("--eps", r.options.eps, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", r.options.max_iter, "iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--stop", r.stop, "stopping rule")
      ->check(CLI::IsMember({"change", "level"}));
  cmd->add_option("--outliers-out", r.outliers_out,
                  "write the outlier matrix as JSON triplets");
  cmd->add_flag("--strict", r.strict, "exit 4 when the iteration cap is hit");
  cmd->add_flag("--no-refit", r.no_refit, "return the plain alternation result");
  cmd->add_flag("--fixed-budget", r.fixed_budget,
                "use budget k from the first iteration instead of growing it");
}

int FinishRobust(const RobustCli& r, const tdoa_robust_report& report) {
  std::fprintf(stderr,
               "iterations=%zu converged=%d objective=%.17g outlier_pairs=%zu refit=%d%s\n",
               report.iterations, report.converged, report.final_objective,
               report.outlier_pairs, report.refit_applied,
               report.budget_clamped ? " budget_clamped" : "");
  if (!report.converged && r.strict) {
    std::fprintf(stderr, "error: not converged within %zu iterations\n",
                 r.options.max_iter);
    return kExitNotConverged;
  }
  return kExitOk;
}

void SaveOutliers(const RobustCli& r, const tdoa_outliers* s) {
  if (!r.outliers_out.empty()) {
    char* text = nullptr;
    Check(tdoa_outliers_serialize(s, &text));
    Emit(text, r.outliers_out);
  }
}

MaskPtr LoadMask(const std::string& path) {
  tdoa_mask* mask = nullptr;
  Check(tdoa_mask_load(path.c_str(), &mask));
  return MaskPtr(mask);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TDOA matrix denoising, completion and simulation"};
  app.set_version_flag("--version", std::string(tdoa_version()));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "base seed for simulation and sweeps");
  app.add_option("--jobs", global.jobs, "worker threads, 0 = hardware threads");
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  MatrixIo denoise_io;
  std::string method = "closed";
  CLI::App* denoise = app.add_subcommand("denoise", "Gauss-Markov projection");
  AddMatrixIo(denoise, denoise_io);
  denoise->add_option("--method", method, "closed-form or element-wise average")
      ->check(CLI::IsMember({"closed", "element"}));

  MatrixIo robust_io;
  RobustCli robust_opts;
  CLI::App* robust =
      app.add_subcommand("robust-denoise", "denoise with sparse outlier rejection");
  AddMatrixIo(robust, robust_io);
  AddRobust(robust, robust_opts);

  MatrixIo complete_io;
  std::string complete_mask;
  bool complete_pseudo = false;
  CLI::App* complete = app.add_subcommand("complete", "fill in missing pairs");
  AddMatrixIo(complete, complete_io);
  complete->add_option("--mask", complete_mask, "mask JSON")
      ->required()
      ->check(CLI::ExistingFile);
  complete->add_flag("--pseudo", complete_pseudo,
                     "minimum-norm solution for disconnected masks");

  MatrixIo rc_io;
  RobustCli rc_opts;
  std::string rc_mask;
  bool rc_pseudo = false;
  CLI::App* robust_complete = app.add_subcommand(
      "robust-complete", "fill in missing pairs with outlier rejection");
  AddMatrixIo(robust_complete, rc_io);
  AddRobust(robust_complete, rc_opts);
  robust_complete->add_option("--mask", rc_mask, "mask JSON")
      ->required()
      ->check(CLI::ExistingFile);
  robust_complete->add_flag("--pseudo", rc_pseudo,
                            "minimum-norm solution for disconnected masks");

  tdoa_simulation_options sim{};
  tdoa_simulation_options_init(&sim);
  std::string sim_out = "-";
  CLI::App* simulate = app.add_subcommand("simulate", "draw one synthetic trial");
  simulate->add_option("--n", sim.n, "number of sensors")->check(CLI::Range(3, 100000));
  simulate->add_option("--noise-sigma", sim.noise_sigma, "noise std, seconds");
  simulate->add_option("--outliers", sim.outlier_count, "outlier pairs");
  simulate->add_option("--outlier-sigma", sim.outlier_sigma, "outlier std, seconds");
  simulate->add_option("--missing", sim.missing_fraction, "missing pair fraction")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--sensor-side", sim.sensor_cube_side, "sensor cube edge, m");
  simulate->add_option("--source-side", sim.source_cube_side, "source cube edge, m");
  simulate->add_option("--speed", sim.speed, "propagation speed, m/s");
  simulate->add_option("--out", sim_out, "output path, '-' for stdout");

  std::string sweep_config;
  std::string sweep_dir = ".";
  CLI::App* sweep = app.add_subcommand("sweep", "run a Monte-Carlo grid");
  sweep->add_option("--config", sweep_config, "sweep config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out-dir", sweep_dir, "output directory")
      ->check(CLI::ExistingDirectory);

  MatrixIo validate_io;
  CLI::App* validate =
      app.add_subcommand("validate", "check skew-symmetry and re-serialize");
  AddMatrixIo(validate, validate_io);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*denoise) {
      MatrixPtr in = denoise_io.Load();
      tdoa_matrix* out = nullptr;
      Check(tdoa_denoise(in.get(),
                         method == "element" ? TDOA_DENOISE_ELEMENT_FORM
                                             : TDOA_DENOISE_CLOSED_FORM,
                         &out));
      MatrixPtr result(out);
      EmitMatrix(result.get(), global.MatrixFormat(), denoise_io.out);
      return kExitOk;
    }
    if (*robust || *robust_complete) {
      const bool masked = robust_complete->parsed();
      RobustCli& r = masked ? rc_opts : robust_opts;
      const MatrixIo& io = masked ? rc_io : robust_io;
      r.options.stop_rule =
          r.stop == "level" ? TDOA_STOP_OBJECTIVE_LEVEL : TDOA_STOP_OBJECTIVE_CHANGE;
      r.options.refit_support = r.no_refit ? 0 : 1;
      r.options.grow_budget = r.fixed_budget ? 0 : 1;
      MatrixPtr in = io.Load();
      tdoa_matrix* m_out = nullptr;
      tdoa_outliers* s_out = nullptr;
      tdoa_robust_report report{};
      if (masked) {
        MaskPtr mask = LoadMask(rc_mask);
        Check(tdoa_robust_complete(in.get(), mask.get(), &r.options, rc_pseudo ? 1 : 0,
                                   &m_out, &s_out, &report));
      } else {
        Check(tdoa_robust_denoise(in.get(), &r.options, &m_out, &s_out, &report));
      }
      MatrixPtr m(m_out);
      OutliersPtr s(s_out);
      EmitMatrix(m.get(), global.MatrixFormat(), io.out);
      SaveOutliers(r, s.get());
      return FinishRobust(r, report);
    }
    if (*complete) {
      MatrixPtr in = complete_io.Load();
      MaskPtr mask = LoadMask(complete_mask);
      tdoa_matrix* out = nullptr;
      Check(tdoa_complete(in.get(), mask.get(), complete_pseudo ? 1 : 0, &out));
      MatrixPtr result(out);
      EmitMatrix(result.get(), global.MatrixFormat(), complete_io.out);
      return kExitOk;
    }
    if (*simulate) {
      if (global.format == "csv") {
        std::fprintf(stderr, "error: simulate writes JSON only\n");
        return kExitInvalid;
      }
      sim.seed = global.seed.value_or(0);
      char* text = nullptr;
      Check(tdoa_simulate_trial_json(&sim, &text));
      Emit(text, sim_out);
      return kExitOk;
    }
    if (*sweep) {
      tdoa_sweep_report report{};
      const tdoa_format format =
          global.format == "json" ? TDOA_FORMAT_JSON : TDOA_FORMAT_CSV;
      Check(tdoa_sweep_run(sweep_config.c_str(), sweep_dir.c_str(), global.jobs, format,
                           global.seed.has_value() ? 1 : 0, global.seed.value_or(0),
                           &report));
      std::fprintf(stderr, "rows=%zu failed_runs=%zu not_converged=%zu\n",
                   report.rows, report.failures, report.not_converged);
      return kExitOk;
    }
    if (*validate) {
      MatrixPtr m = validate_io.Load();
      EmitMatrix(m.get(), global.MatrixFormat(), validate_io.out);
      return kExitOk;
    }
  } catch (const CliFailure& failure) {
    return failure.exit_code;
  }
  return kExitInvalid;
}
