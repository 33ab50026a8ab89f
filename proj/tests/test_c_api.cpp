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
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "tdoamat/tdoamat.h"

TEST_CASE("matrix handles") {
  const double toas[3] = {1e-3, 2e-3, 3e-3};
  tdoa_matrix* m = nullptr;
  REQUIRE(tdoa_matrix_from_toas(toas, 3, &m) == TDOA_OK);
  CHECK(tdoa_matrix_size(m) == 3);
  double entries[9];
  CHECK(tdoa_matrix_entries(m, entries, 9) == TDOA_OK);
  CHECK(entries[2] == doctest::Approx(-2e-3));
  CHECK(tdoa_matrix_entries(m, entries, 8) == TDOA_ERR_BUFFER_TOO_SMALL);

  double x[3], u[3], sigma = 0.0;
  CHECK(tdoa_decompose(m, x, 3) == TDOA_OK);
  CHECK(tdoa_svd_params(m, u, 3, &sigma) == TDOA_OK);
  CHECK(sigma == doctest::Approx(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])));
  tdoa_matrix* back = nullptr;
  CHECK(tdoa_compose(x, 3, &back) == TDOA_OK);
  double again[9];
  CHECK(tdoa_matrix_entries(back, again, 9) == TDOA_OK);
  for (int i = 0; i < 9; ++i) CHECK(again[i] == doctest::Approx(entries[i]).epsilon(1e-12));

  int consistent = 0;
  double residual = -1.0;
  CHECK(tdoa_is_consistent(m, 1e-9, &consistent, &residual) == TDOA_OK);
  CHECK(consistent == 1);
  CHECK(residual >= 0.0);

  char* text = nullptr;
  CHECK(tdoa_matrix_serialize(m, TDOA_FORMAT_CSV, &text) == TDOA_OK);
  CHECK(std::strncmp(text, "tdoa_matrix,n=3\n", 16) == 0);
  tdoa_string_free(text);

  tdoa_matrix_destroy(back);
  tdoa_matrix_destroy(m);
  tdoa_matrix_destroy(nullptr);
}

TEST_CASE("errors carry a status and a message") {
  const double bad[9] = {0, 1, 2, -1, 0, 3, -2, -3.001, 0};
  tdoa_matrix* m = nullptr;
  CHECK(tdoa_matrix_from_entries(bad, 3, 0, &m) == TDOA_ERR_INVALID_INPUT);
  CHECK(m == nullptr);
  CHECK(std::string(tdoa_last_error()).find("(1, 2)") != std::string::npos);
  CHECK(tdoa_matrix_from_entries(bad, 3, 1, &m) == TDOA_OK);
  tdoa_matrix_destroy(m);

  CHECK(tdoa_matrix_from_entries(nullptr, 3, 0, &m) == TDOA_ERR_NULL_ARGUMENT);
  CHECK(tdoa_matrix_load("/nonexistent/m.json", 0, &m) == TDOA_ERR_IO);

  tdoa_matrix* zero = nullptr;
  REQUIRE(tdoa_matrix_zero(4, &zero) == TDOA_OK);
  double u[4], sigma;
  CHECK(tdoa_svd_params(zero, u, 4, &sigma) == TDOA_ERR_DEGENERATE);
  tdoa_matrix_destroy(zero);

  CHECK(std::string(tdoa_status_string(TDOA_ERR_NOT_RECOVERABLE)).size() > 0);
  CHECK(std::string(tdoa_version()) == "0.1.0");
}

TEST_CASE("robust denoising and completion through handles") {
  const double toas[5] = {1e-3, 2e-3, 3e-3, 0.5e-3, 4e-3};
  double entries[25];
  tdoa_matrix* truth = nullptr;
  REQUIRE(tdoa_matrix_from_toas(toas, 5, &truth) == TDOA_OK);
  REQUIRE(tdoa_matrix_entries(truth, entries, 25) == TDOA_OK);
  entries[2] += 10e-3;
  entries[10] -= 10e-3;
  tdoa_matrix* observed = nullptr;
  REQUIRE(tdoa_matrix_from_entries(entries, 5, 0, &observed) == TDOA_OK);

  tdoa_robust_options options;
  tdoa_robust_options_init(&options);
  CHECK(options.eps == 1e-10);
  CHECK(options.max_iter == 1000);
  CHECK(options.refit_support == 1);
  CHECK(options.grow_budget == 1);
  options.k = 1;
  tdoa_matrix* m_star = nullptr;
  tdoa_outliers* s_star = nullptr;
  tdoa_robust_report report{};
  REQUIRE(tdoa_robust_denoise(observed, &options, &m_star, &s_star, &report) == TDOA_OK);
  CHECK(report.converged == 1);
  CHECK(report.outlier_pairs == 1);
  CHECK(tdoa_outliers_nonzero_count(s_star) == 2);
  double snr = 0.0;
  CHECK(tdoa_snr_db(truth, m_star, &snr) == TDOA_OK);
  CHECK(snr > 150.0);

  const size_t missing[2] = {0, 2};
  tdoa_mask* mask = nullptr;
  REQUIRE(tdoa_mask_from_missing_pairs(5, missing, 1, &mask) == TDOA_OK);
  CHECK(tdoa_mask_missing_pairs(mask) == 1);
  int recoverable = 0;
  CHECK(tdoa_mask_recoverability(mask, &recoverable, nullptr) == TDOA_OK);
  CHECK(recoverable == 1);
  tdoa_matrix* completed = nullptr;
  REQUIRE(tdoa_complete(observed, mask, 0, &completed) == TDOA_OK);
  double out[25];
  CHECK(tdoa_matrix_entries(completed, out, 25) == TDOA_OK);
  // The hidden (0, 2) entry held the gross error; completion restores it.
  CHECK(out[2] == doctest::Approx(-2e-3).epsilon(1e-12));

  const size_t cut[8] = {0, 1, 0, 2, 0, 3, 0, 4};
  tdoa_mask* bad = nullptr;
  REQUIRE(tdoa_mask_from_missing_pairs(5, cut, 4, &bad) == TDOA_OK);
  tdoa_matrix* none = nullptr;
  CHECK(tdoa_complete(observed, bad, 0, &none) == TDOA_ERR_NOT_RECOVERABLE);
  CHECK(tdoa_robust_complete(observed, bad, &options, 0, nullptr, nullptr, nullptr) ==
        TDOA_ERR_NOT_RECOVERABLE);

  tdoa_mask_destroy(bad);
  tdoa_matrix_destroy(completed);
  tdoa_mask_destroy(mask);
  tdoa_outliers_destroy(s_star);
  tdoa_matrix_destroy(m_star);
  tdoa_matrix_destroy(observed);
  tdoa_matrix_destroy(truth);
}

TEST_CASE("simulation and localization") {
  tdoa_simulation_options sim;
  tdoa_simulation_options_init(&sim);
  CHECK(sim.n == 10);
  CHECK(sim.speed == 343.313);
  char* json = nullptr;
  REQUIRE(tdoa_simulate_trial_json(&sim, &json) == TDOA_OK);
  CHECK(std::strstr(json, "\"injected_outliers\"") != nullptr);
  tdoa_string_free(json);

  // Sensors on a cube's corners plus one off-center point, source inside.
  const double sensors[18] = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0.3, 0.8, 0.6};
  const double source[3] = {0.2, 0.4, 0.9};
  double toa[6];
  for (int i = 0; i < 6; ++i) {
    const double dx = sensors[3 * i] - source[0], dy = sensors[3 * i + 1] - source[1],
                 dz = sensors[3 * i + 2] - source[2];
    toa[i] = std::sqrt(dx * dx + dy * dy + dz * dz) / 343.0;
  }
  double delays[5];
  for (int i = 1; i < 6; ++i) delays[i - 1] = toa[i] - toa[0];
  double p[3];
  REQUIRE(tdoa_localize(delays, sensors, 6, 343.0, p) == TDOA_OK);
  for (int a = 0; a < 3; ++a) CHECK(p[a] == doctest::Approx(source[a]).epsilon(1e-9));
  CHECK(tdoa_localize(delays, sensors, 4, 343.0, p) == TDOA_ERR_INVALID_INPUT);
}
