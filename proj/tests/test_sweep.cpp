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

#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"
#include "tdoamat/error.hpp"
#include "tdoamat/sweep.hpp"

using tdoamat::Pipeline;
using tdoamat::SweepConfig;

TEST_CASE("pipeline names") {
  for (Pipeline p : {Pipeline::kRaw, Pipeline::kDenoise, Pipeline::kRobustDenoise,
                     Pipeline::kComplete, Pipeline::kRobustComplete}) {
    CHECK(tdoamat::PipelineFromName(tdoamat::PipelineName(p)) == p);
  }
  CHECK(tdoamat::PipelineUsesK(Pipeline::kRobustDenoise));
  CHECK_FALSE(tdoamat::PipelineUsesK(Pipeline::kComplete));
  CHECK_THROWS_AS((void)tdoamat::PipelineFromName("median"), tdoamat::Error);
}

TEST_CASE("config parsing") {
  const SweepConfig c = tdoamat::ParseSweepConfig(
      R"({"n": 8, "runs": 3, "noise_sigmas": [1e-6, 2e-6], "k_values": [2, 4],
          "pipelines": ["raw", "robust_denoise"], "seed": 12})");
  CHECK(c.n == 8);
  CHECK(c.runs == 3);
  CHECK(c.noise_sigmas.size() == 2);
  CHECK(c.k_values == std::vector<std::size_t>{2, 4});
  CHECK(c.pipelines == std::vector<Pipeline>{Pipeline::kRaw, Pipeline::kRobustDenoise});
  CHECK(c.seed == 12);
  CHECK(c.eps == 1e-10);

  CHECK_THROWS_AS((void)tdoamat::ParseSweepConfig("[1, 2]"), tdoamat::Error);
  CHECK_THROWS_AS((void)tdoamat::ParseSweepConfig(R"({"runs": "many"})"), tdoamat::Error);
  CHECK_THROWS_AS((void)tdoamat::ParseSweepConfig(R"({"n": 1})"), tdoamat::Error);
  CHECK_THROWS_AS((void)tdoamat::ParseSweepConfig(R"({"missing_fractions": [1.5]})"),
                  tdoamat::Error);
}

TEST_CASE("noise-free sweep is perfect") {
  SweepConfig c;
  c.runs = 1;
  c.noise_sigmas = {0.0};
  const tdoamat::SweepResult r = tdoamat::RunSweep(c);
  REQUIRE(r.rows.size() == 5);
  for (const tdoamat::SweepRow& row : r.rows) {
    CHECK(row.mean_snr_db == std::numeric_limits<double>::infinity());
    CHECK(row.mean_loc_error_mm < 1e-3);
    CHECK(row.snr_failures == 0);
  }
}

TEST_CASE("grid shape and cell coordinates") {
  SweepConfig c;
  c.runs = 2;
  c.noise_sigmas = {1e-6, 1e-5, 1e-4};
  c.outlier_counts = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  c.pipelines = {Pipeline::kDenoise, Pipeline::kRobustDenoise};
  const tdoamat::SweepResult r = tdoamat::RunSweep(c);
  CHECK(r.rows.size() == 2 * 11 * 3);
  std::set<std::tuple<int, std::size_t, double>> cells;
  for (const auto& row : r.rows) {
    cells.insert({static_cast<int>(row.pipeline), row.outlier_count, row.noise_sigma});
    CHECK(row.runs == 2);
    CHECK(row.seed == 0);
  }
  CHECK(cells.size() == r.rows.size());

  const std::string csv = tdoamat::SnrCsv(r);
  CHECK(csv.rfind("pipeline,k,noise_sigma_s,outlier_count,missing_fraction,missing_pairs,"
                  "runs,seed,mean_snr_db,failures,not_converged\n",
                  0) == 0);
  CHECK(csv.find("\ndenoise,na,") != std::string::npos);
  CHECK(csv.find("\nrobust_denoise,8,") != std::string::npos);
  CHECK(tdoamat::LocalizationCsv(r).find("mean_loc_error_mm") != std::string::npos);
  CHECK(tdoamat::SweepJson(r).find("\"rows\"") != std::string::npos);
}

TEST_CASE("missing data cells") {
  SweepConfig c;
  c.runs = 4;
  c.missing_fractions = {0.5};
  c.pipelines = {Pipeline::kRaw, Pipeline::kComplete};
  const tdoamat::SweepResult r = tdoamat::RunSweep(c);
  for (const auto& row : r.rows) CHECK(row.missing_pairs == 23);

  // Four visible pairs cannot connect ten sensors.
  c.missing_fractions = {0.9};
  c.pipelines = {Pipeline::kComplete};
  const tdoamat::SweepResult none = tdoamat::RunSweep(c);
  REQUIRE(none.rows.size() == 1);
  CHECK(std::isnan(none.rows[0].mean_snr_db));
  CHECK(none.rows[0].snr_failures == 4);
}

TEST_CASE("results do not depend on the thread count") {
  SweepConfig c;
  c.runs = 5;
  c.noise_sigmas = {1e-6, 1e-5};
  c.outlier_counts = {0, 3};
  c.missing_fractions = {0.0, 0.2};
  const std::string one = tdoamat::SnrCsv(tdoamat::RunSweep(c, 1));
  CHECK(one == tdoamat::SnrCsv(tdoamat::RunSweep(c, 1)));
  CHECK(one == tdoamat::SnrCsv(tdoamat::RunSweep(c, 4)));
  c.seed = 1;
  CHECK(one != tdoamat::SnrCsv(tdoamat::RunSweep(c, 1)));
}
