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

// Synthetic scenes and corruption of their TDOA matrices: random sensor and
// source placement, Gaussian noise, replaced-value outliers and missing
// pairs, plus the SNR metric on the non-redundant set.

#ifndef TDOAMAT_SCENE_HPP_
#define TDOAMAT_SCENE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tdoamat/mask.hpp"
#include "tdoamat/tdoa_matrix.hpp"

namespace tdoamat {

// Speed of sound, m/s.
inline constexpr double kDefaultPropagationSpeed = 343.313;

struct Scene {
  std::vector<Eigen::Vector3d> sensors;  // meters
  Eigen::Vector3d source = Eigen::Vector3d::Zero();
  double speed = kDefaultPropagationSpeed;

  // n >= 2, finite coordinates, positive speed, sensors more than 1e-6 m
  // apart. Throws Error(kInvalidInput).
  void Validate() const;
};

// Sensors i.i.d. uniform in a cube of side `sensor_cube_side` centred at the
// origin, source uniform in a cube of side `source_cube_side`. Deterministic
// in (seed, index); coincident sensors are redrawn a bounded number of times.
Scene RandomScene(std::size_t n, double sensor_cube_side,
                  double source_cube_side, std::uint64_t seed,
                  std::uint64_t index = 0);

// tau_i = ||r - s_i|| / c.
Eigen::VectorXd TimesOfArrival(const Scene& scene);
TdoaMatrix GroundTruthTdoa(const Scene& scene);

struct CorruptionSpec {
  double noise_sigma = 0.0;  // seconds
  std::size_t outlier_count = 0;
  double outlier_sigma = 1e-4;  // seconds
  double missing_fraction = 0.0;
  std::uint64_t seed = 0;
  // Sub-stream keys, so that one base seed can drive many trials.
  std::uint64_t cell_index = 0;
  std::uint64_t run_index = 0;

  void Validate() const;
};

struct Trial {
  std::optional<Scene> scene;
  TdoaMatrix truth;
  // Noisy measurements with outliers substituted; missing entries are zero.
  TdoaMatrix corrupted;
  Mask mask;
  // Pairs whose value was replaced by an outlier draw, row < col, ascending.
  std::vector<IndexPair> injected_outliers;
  std::uint64_t seed = 0;
};

// ceil(fraction * n (n - 1) / 2), so that 50% of 45 pairs is 23.
std::size_t MissingPairCount(std::size_t n, double fraction);

// Adds N(0, noise_sigma) to every pair, replaces `outlier_count` random pairs
// by fresh N(0, outlier_sigma) draws, then masks ceil(missing_fraction * P)
// random pairs, chosen independently of the outliers. Each step draws from
// its own stream.
Trial Corrupt(const TdoaMatrix& truth, const CorruptionSpec& spec);

Trial SimulateTrial(const Scene& scene, const CorruptionSpec& spec);

// Returned when the estimate matches the truth to rounding, i.e. the error
// energy is at most kPerfectRelativeEnergy times the signal energy.
inline constexpr double kPerfectSnrDb = std::numeric_limits<double>::infinity();
inline constexpr double kPerfectRelativeEnergy = 1e-24;

// 10 log10(sum_i dt_i1^2 / sum_i (dt*_i1 - dt_i1)^2) over i = 2..n, i.e. the
// delays referenced to the first sensor. Throws Error(kDegenerate) when the
// reference column of `truth` is all zero.
double SnrDb(const TdoaMatrix& truth, const TdoaMatrix& estimate);

// (M(1,0), ..., M(n-1,0)): delays of sensors 2..n relative to sensor 1.
Eigen::VectorXd ReferenceColumn(const TdoaMatrix& m);

}  // namespace tdoamat

#endif  // TDOAMAT_SCENE_HPP_
