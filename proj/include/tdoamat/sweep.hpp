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

// Monte-Carlo sweeps over noise level, outlier count and missing fraction.
//
// Each (noise, outliers, missing) cell draws `runs` trials. Run r uses the
// same random scene in every cell; noise, outlier and mask draws are keyed
// by (seed, cell, run). All selected pipelines see the same trials. Cell
// results are independent of the number of worker threads.

#ifndef TDOAMAT_SWEEP_HPP_
#define TDOAMAT_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdoamat/scene.hpp"

namespace tdoamat {

enum class Pipeline {
  kRaw,             // measured reference column, zero-filled where missing
  kDenoise,         // closed-form (Gauss-Markov) projection
  kRobustDenoise,   // alternation with hard thresholding, per k
  kComplete,        // closed-form completion with the known mask
  kRobustComplete,  // robust alternation restricted to visible entries, per k
};

std::string_view PipelineName(Pipeline p);
// Throws Error(kParse) for unknown names.
Pipeline PipelineFromName(std::string_view name);
bool PipelineUsesK(Pipeline p);

struct SweepConfig {
  std::size_t n = 10;
  std::size_t runs = 20;
  std::vector<double> noise_sigmas{1e-6};  // seconds
  std::vector<std::size_t> outlier_counts{0};
  std::vector<double> missing_fractions{0.0};
  std::vector<std::size_t> k_values{8};
  double eps = 1e-10;
  std::size_t max_iter = 1000;
  std::uint64_t seed = 0;
  std::vector<Pipeline> pipelines{Pipeline::kRaw, Pipeline::kDenoise,
                                  Pipeline::kRobustDenoise, Pipeline::kComplete,
                                  Pipeline::kRobustComplete};
  double sensor_cube_side = 1.0;  // meters
  double source_cube_side = 2.0;  // meters
  double speed = kDefaultPropagationSpeed;
  double outlier_sigma = 1e-4;  // seconds

  // Throws Error(kInvalidInput).
  void Validate() const;
};

// JSON object with the SweepConfig field names; absent fields keep their
// defaults. Pipelines are given by name ("raw", "denoise", ...).
SweepConfig ParseSweepConfig(std::string_view json);

struct SweepRow {
  Pipeline pipeline = Pipeline::kRaw;
  std::optional<std::size_t> k;
  double noise_sigma = 0.0;
  std::size_t outlier_count = 0;
  double missing_fraction = 0.0;
  std::size_t missing_pairs = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;

  // Means over the runs that produced a value; NaN when none did.
  double mean_snr_db = 0.0;
  double mean_loc_error_mm = 0.0;
  // Runs without an estimate (non-recoverable mask, undefined metric).
  std::size_t snr_failures = 0;
  // Runs where the estimate could not be localized, failures above included.
  std::size_t loc_failures = 0;
  std::size_t not_converged = 0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
};

// jobs == 0 means one worker per hardware thread.
SweepResult RunSweep(const SweepConfig& config, unsigned jobs = 1);

std::string SnrCsv(const SweepResult& result);
std::string LocalizationCsv(const SweepResult& result);
std::string SweepJson(const SweepResult& result);

}  // namespace tdoamat

#endif  // TDOAMAT_SWEEP_HPP_
