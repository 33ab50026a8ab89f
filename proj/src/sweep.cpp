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

#include "tdoamat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "json.hpp"
#include "tdoamat/completion.hpp"
#include "tdoamat/denoise.hpp"
#include "tdoamat/error.hpp"
#include "tdoamat/io.hpp"
#include "tdoamat/localize.hpp"
#include "tdoamat/robust.hpp"

namespace tdoamat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  double noise_sigma;
  std::size_t outlier_count;
  double missing_fraction;
};

// One output row being accumulated.
struct Accumulator {
  Pipeline pipeline;
  std::optional<std::size_t> k;
  double snr_sum = 0.0;
  std::size_t snr_count = 0;
  double loc_sum = 0.0;
  std::size_t loc_count = 0;
  std::size_t snr_failures = 0;
  std::size_t loc_failures = 0;
  std::size_t not_converged = 0;
};

std::vector<Cell> EnumerateCells(const SweepConfig& c) {
  std::vector<Cell> cells;
  for (double missing : c.missing_fractions) {
    for (std::size_t outliers : c.outlier_counts) {
      for (double sigma : c.noise_sigmas) cells.push_back({sigma, outliers, missing});
    }
  }
  return cells;
}

std::vector<Accumulator> MakeAccumulators(const SweepConfig& c) {
  std::vector<Accumulator> acc;
  for (Pipeline p : c.pipelines) {
    if (PipelineUsesK(p)) {
      for (std::size_t k : c.k_values) acc.push_back({p, k});
    } else {
      acc.push_back({p, std::nullopt});
    }
  }
  return acc;
}

// Returns the estimate, or nullopt when the pipeline cannot produce one.
std::optional<TdoaMatrix> Estimate(const Trial& trial, const Accumulator& a,
                                   const SweepConfig& c,
                                   const std::optional<CompletionSolver>& solver,
                                   bool* converged) {
  *converged = true;
  RobustOptions options;
  options.k = a.k.value_or(0);
  options.eps = c.eps;
  options.max_iter = c.max_iter;
  switch (a.pipeline) {
    case Pipeline::kRaw:
      return trial.corrupted;
    case Pipeline::kDenoise:
      return DenoiseClosedForm(trial.corrupted);
    case Pipeline::kRobustDenoise: {
      RobustResult r = RobustDenoise(trial.corrupted, options);
      *converged = r.converged;
      return std::move(r.m_star);
    }
    case Pipeline::kComplete:
      if (!solver) return std::nullopt;
      return solver->Complete(trial.corrupted);
    case Pipeline::kRobustComplete: {
      if (!solver) return std::nullopt;
      RobustResult r = RobustComplete(trial.corrupted, trial.mask, options);
      *converged = r.converged;
      return std::move(r.m_star);
    }
  }
  return std::nullopt;
}

std::vector<SweepRow> RunCell(const SweepConfig& c, const Cell& cell,
                              std::size_t cell_index) {
  std::vector<Accumulator> acc = MakeAccumulators(c);
  for (std::size_t run = 0; run < c.runs; ++run) {
    const Scene scene = RandomScene(c.n, c.sensor_cube_side, c.source_cube_side,
                                    c.seed, run);
    CorruptionSpec spec;
    spec.noise_sigma = cell.noise_sigma;
    spec.outlier_count = cell.outlier_count;
    spec.outlier_sigma = c.outlier_sigma;
    spec.missing_fraction = cell.missing_fraction;
    spec.seed = c.seed;
    spec.cell_index = cell_index;
    spec.run_index = run;
    const Trial trial = SimulateTrial(scene, spec);

    std::optional<CompletionSolver> solver;
    try {
      solver.emplace(trial.mask);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotRecoverable) throw;
    }

    for (Accumulator& a : acc) {
      bool converged = true;
      const std::optional<TdoaMatrix> estimate =
          Estimate(trial, a, c, solver, &converged);
      if (!converged) ++a.not_converged;
      if (!estimate) {
        ++a.snr_failures;
        ++a.loc_failures;
        continue;
      }
      try {
        a.snr_sum += SnrDb(trial.truth, *estimate);
        ++a.snr_count;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerate) throw;
        ++a.snr_failures;
      }
      try {
        const Eigen::Vector3d position =
            LocalizeChanHo(ReferenceColumn(*estimate), scene.sensors, scene.speed);
        a.loc_sum += 1e3 * (position - scene.source).norm();
        ++a.loc_count;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kLocalizationFailed &&
            e.code() != ErrorCode::kInvalidInput) {
          throw;
        }
        ++a.loc_failures;
      }
    }
  }

  const std::size_t missing_pairs = MissingPairCount(c.n, cell.missing_fraction);
  std::vector<SweepRow> rows;
  for (const Accumulator& a : acc) {
    SweepRow row;
    row.pipeline = a.pipeline;
    row.k = a.k;
    row.noise_sigma = cell.noise_sigma;
    row.outlier_count = cell.outlier_count;
    row.missing_fraction = cell.missing_fraction;
    row.missing_pairs = missing_pairs;
    row.runs = c.runs;
    row.seed = c.seed;
    row.mean_snr_db = a.snr_count ? a.snr_sum / static_cast<double>(a.snr_count) : kNaN;
    row.mean_loc_error_mm =
        a.loc_count ? a.loc_sum / static_cast<double>(a.loc_count) : kNaN;
    row.snr_failures = a.snr_failures;
    row.loc_failures = a.loc_failures;
    row.not_converged = a.not_converged;
    rows.push_back(row);
  }
  return rows;
}

template <typename T>
std::vector<T> ReadList(const nlohmann::json& doc, const char* key,
                        std::vector<T> fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc[key].get<std::vector<T>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sweep config: bad \"") + key +
                                       "\": " + e.what());
  }
}

template <typename T>
T ReadScalar(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc[key].get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sweep config: bad \"") + key +
                                       "\": " + e.what());
  }
}

std::string CsvHeader(std::string_view metric) {
  return "pipeline,k,noise_sigma_s,outlier_count,missing_fraction,"
         "missing_pairs,runs,seed," +
         std::string(metric) + ",failures,not_converged\n";
}

std::string CsvPrefix(const SweepRow& r) {
  std::string s(PipelineName(r.pipeline));
  s += ',';
  s += r.k ? std::to_string(*r.k) : "na";
  s += ',' + FormatNumber(r.noise_sigma);
  s += ',' + std::to_string(r.outlier_count);
  s += ',' + FormatNumber(r.missing_fraction);
  s += ',' + std::to_string(r.missing_pairs);
  s += ',' + std::to_string(r.runs);
  s += ',' + std::to_string(r.seed);
  return s;
}

}  // namespace

std::string_view PipelineName(Pipeline p) {
  switch (p) {
    case Pipeline::kRaw:
      return "raw";
    case Pipeline::kDenoise:
      return "denoise";
    case Pipeline::kRobustDenoise:
      return "robust_denoise";
    case Pipeline::kComplete:
      return "complete";
    case Pipeline::kRobustComplete:
      return "robust_complete";
  }
  return "unknown";
}

Pipeline PipelineFromName(std::string_view name) {
  for (Pipeline p : {Pipeline::kRaw, Pipeline::kDenoise, Pipeline::kRobustDenoise,
                     Pipeline::kComplete, Pipeline::kRobustComplete}) {
    if (PipelineName(p) == name) return p;
  }
  throw Error(ErrorCode::kParse, "unknown pipeline '" + std::string(name) + "'");
}

bool PipelineUsesK(Pipeline p) {
  return p == Pipeline::kRobustDenoise || p == Pipeline::kRobustComplete;
}

void SweepConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidInput, "sweep config: " + what);
  };
  if (n < 2) fail("n must be >= 2");
  if (runs < 1) fail("runs must be >= 1");
  if (noise_sigmas.empty() || outlier_counts.empty() || missing_fractions.empty()) {
    fail("noise_sigmas, outlier_counts and missing_fractions must be non-empty");
  }
  if (pipelines.empty()) fail("no pipelines selected");
  const bool needs_k = std::any_of(pipelines.begin(), pipelines.end(), PipelineUsesK);
  if (needs_k && k_values.empty()) fail("k_values must be non-empty");
  if (!(eps > 0.0)) fail("eps must be positive");
  if (max_iter < 1) fail("max_iter must be >= 1");
  const std::size_t pairs = n * (n - 1) / 2;
  for (double s : noise_sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) fail("noise sigmas must be >= 0");
  }
  for (double f : missing_fractions) {
    if (!(f >= 0.0) || !(f < 1.0)) fail("missing fractions must lie in [0, 1)");
    for (std::size_t o : outlier_counts) {
      if (o + MissingPairCount(n, f) > pairs) {
        fail("outlier count plus missing pairs exceeds the number of pairs");
      }
    }
  }
  if (!(sensor_cube_side > 0.0) || !(source_cube_side >= 0.0) || !(speed > 0.0) ||
      !(outlier_sigma >= 0.0)) {
    fail("geometry, speed and outlier sigma must be positive");
  }
}

SweepConfig ParseSweepConfig(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json.begin(), json.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sweep config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "sweep config must be an object");
  SweepConfig c;
  c.n = ReadScalar<std::size_t>(doc, "n", c.n);
  c.runs = ReadScalar<std::size_t>(doc, "runs", c.runs);
  c.noise_sigmas = ReadList<double>(doc, "noise_sigmas", c.noise_sigmas);
  c.outlier_counts = ReadList<std::size_t>(doc, "outlier_counts", c.outlier_counts);
  c.missing_fractions = ReadList<double>(doc, "missing_fractions", c.missing_fractions);
  c.k_values = ReadList<std::size_t>(doc, "k_values", c.k_values);
  c.eps = ReadScalar<double>(doc, "eps", c.eps);
  c.max_iter = ReadScalar<std::size_t>(doc, "max_iter", c.max_iter);
  c.seed = ReadScalar<std::uint64_t>(doc, "seed", c.seed);
  c.sensor_cube_side = ReadScalar<double>(doc, "sensor_cube_side", c.sensor_cube_side);
  c.source_cube_side = ReadScalar<double>(doc, "source_cube_side", c.source_cube_side);
  c.speed = ReadScalar<double>(doc, "speed", c.speed);
  c.outlier_sigma = ReadScalar<double>(doc, "outlier_sigma", c.outlier_sigma);
  if (doc.contains("pipelines")) {
    c.pipelines.clear();
    for (const std::string& name : ReadList<std::string>(doc, "pipelines", {})) {
      c.pipelines.push_back(PipelineFromName(name));
    }
  }
  c.Validate();
  return c;
}

SweepResult RunSweep(const SweepConfig& config, unsigned jobs) {
  config.Validate();
  const std::vector<Cell> cells = EnumerateCells(config);
  std::vector<std::vector<SweepRow>> per_cell(cells.size());

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cells.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      per_cell[i] = RunCell(config, cells[i], i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < cells.size(); i = next++) {
            per_cell[i] = RunCell(config, cells[i], i);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next = cells.size();
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SweepResult result;
  result.config = config;
  for (auto& rows : per_cell) {
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  return result;
}

std::string SnrCsv(const SweepResult& result) {
  std::string out = CsvHeader("mean_snr_db");
  for (const SweepRow& r : result.rows) {
    out += CsvPrefix(r) + ',' + FormatNumber(r.mean_snr_db) + ',' +
           std::to_string(r.snr_failures) + ',' + std::to_string(r.not_converged) +
           '\n';
  }
  return out;
}

std::string LocalizationCsv(const SweepResult& result) {
  std::string out = CsvHeader("mean_loc_error_mm");
  for (const SweepRow& r : result.rows) {
    out += CsvPrefix(r) + ',' + FormatNumber(r.mean_loc_error_mm) + ',' +
           std::to_string(r.loc_failures) + ',' + std::to_string(r.not_converged) +
           '\n';
  }
  return out;
}

std::string SweepJson(const SweepResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  // JSON has no inf/nan; such values are written as strings.
  auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return FormatNumber(v);
  };
  for (const SweepRow& r : result.rows) {
    nlohmann::ordered_json row;
    row["pipeline"] = PipelineName(r.pipeline);
    row["k"] = r.k ? nlohmann::ordered_json(*r.k) : nlohmann::ordered_json(nullptr);
    row["noise_sigma_s"] = r.noise_sigma;
    row["outlier_count"] = r.outlier_count;
    row["missing_fraction"] = r.missing_fraction;
    row["missing_pairs"] = r.missing_pairs;
    row["runs"] = r.runs;
    row["seed"] = r.seed;
    row["mean_snr_db"] = number(r.mean_snr_db);
    row["snr_failures"] = r.snr_failures;
    row["mean_loc_error_mm"] = number(r.mean_loc_error_mm);
    row["loc_failures"] = r.loc_failures;
    row["not_converged"] = r.not_converged;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace tdoamat
