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

#include "tdoamat/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tdoamat/error.hpp"
#include "tdoamat/rng.hpp"

namespace tdoamat {

using Eigen::Index;
using Eigen::Vector3d;

namespace {

constexpr double kMinSensorSeparation = 1e-6;
constexpr int kMaxSceneRetries = 100;

double MinSeparation(const std::vector<Vector3d>& sensors) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    for (std::size_t j = i + 1; j < sensors.size(); ++j) {
      best = std::min(best, (sensors[i] - sensors[j]).norm());
    }
  }
  return best;
}

Vector3d UniformInCube(Rng& rng, double side) {
  Vector3d p;
  for (int a = 0; a < 3; ++a) p(a) = rng.Uniform(-side / 2.0, side / 2.0);
  return p;
}

// First `count` entries of a seeded Fisher-Yates shuffle of [0, total).
std::vector<std::size_t> SamplePairs(Rng& rng, std::size_t total,
                                     std::size_t count) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.Index(total - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

std::vector<IndexPair> UpperPairs(Index n) {
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

}  // namespace

void Scene::Validate() const {
  if (sensors.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "a scene needs at least 2 sensors");
  }
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw Error(ErrorCode::kInvalidInput, "propagation speed must be positive");
  }
  for (const Vector3d& s : sensors) {
    if (!s.allFinite()) {
      throw Error(ErrorCode::kInvalidInput, "non-finite sensor position");
    }
  }
  if (!source.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "non-finite source position");
  }
  if (MinSeparation(sensors) <= kMinSensorSeparation) {
    throw Error(ErrorCode::kInvalidInput, "sensors must be pairwise distinct");
  }
}

Scene RandomScene(std::size_t n, double sensor_cube_side,
                  double source_cube_side, std::uint64_t seed,
                  std::uint64_t index) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidInput, "a scene needs at least 2 sensors");
  }
  if (!(sensor_cube_side > 0.0) || !(source_cube_side >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "cube sides must be positive");
  }
  Rng rng(seed, Stream::kScene, index);
  for (int attempt = 0; attempt < kMaxSceneRetries; ++attempt) {
    Scene scene;
    scene.sensors.resize(n);
    for (Vector3d& s : scene.sensors) s = UniformInCube(rng, sensor_cube_side);
    scene.source = UniformInCube(rng, source_cube_side);
    if (MinSeparation(scene.sensors) > kMinSensorSeparation) return scene;
  }
  throw Error(ErrorCode::kDegenerate,
              "could not draw pairwise distinct sensor positions");
}

Eigen::VectorXd TimesOfArrival(const Scene& scene) {
  scene.Validate();
  Eigen::VectorXd toas(static_cast<Index>(scene.sensors.size()));
  for (std::size_t i = 0; i < scene.sensors.size(); ++i) {
    toas(static_cast<Index>(i)) =
        (scene.source - scene.sensors[i]).norm() / scene.speed;
  }
  return toas;
}

TdoaMatrix GroundTruthTdoa(const Scene& scene) {
  return FromToas(TimesOfArrival(scene));
}

void CorruptionSpec::Validate() const {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma) ||
      !(outlier_sigma >= 0.0) || !std::isfinite(outlier_sigma)) {
    throw Error(ErrorCode::kInvalidInput,
                "noise and outlier sigmas must be finite and nonnegative");
  }
  if (!(missing_fraction >= 0.0) || !(missing_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "missing fraction must lie in [0, 1)");
  }
}

std::size_t MissingPairCount(std::size_t n, double fraction) {
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  // The slack absorbs products such as 0.2 * 45 = 9.000000000000002.
  return static_cast<std::size_t>(std::ceil(fraction * pairs - 1e-9));
}

Trial Corrupt(const TdoaMatrix& truth, const CorruptionSpec& spec) {
  spec.Validate();
  const Index n = truth.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidInput, "matrix must have n >= 2");
  }
  const std::vector<IndexPair> pairs = UpperPairs(n);
  const std::size_t missing =
      MissingPairCount(static_cast<std::size_t>(n), spec.missing_fraction);
  if (spec.outlier_count + missing > pairs.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "outlier count plus missing pairs (" +
                    std::to_string(spec.outlier_count + missing) +
                    ") exceeds the " + std::to_string(pairs.size()) +
                    " available pairs");
  }

  Trial trial;
  trial.truth = truth;
  trial.seed = spec.seed;
  TdoaMatrix corrupted(n);

  Rng noise(spec.seed, Stream::kNoise, spec.cell_index, spec.run_index);
  for (const IndexPair& p : pairs) {
    corrupted.Set(p.row, p.col,
                  truth(p.row, p.col) + spec.noise_sigma * noise.Normal());
  }

  Rng outliers(spec.seed, Stream::kOutliers, spec.cell_index, spec.run_index);
  for (std::size_t idx : SamplePairs(outliers, pairs.size(), spec.outlier_count)) {
    const IndexPair& p = pairs[idx];
    corrupted.Set(p.row, p.col, outliers.Normal(0.0, spec.outlier_sigma));
    trial.injected_outliers.push_back(p);
  }
  std::sort(trial.injected_outliers.begin(), trial.injected_outliers.end());

  Rng mask_rng(spec.seed, Stream::kMask, spec.cell_index, spec.run_index);
  std::vector<IndexPair> missing_pairs;
  for (std::size_t idx : SamplePairs(mask_rng, pairs.size(), missing)) {
    missing_pairs.push_back(pairs[idx]);
  }
  trial.mask = Mask::FromMissingPairs(n, missing_pairs);
  trial.corrupted = trial.mask.Apply(corrupted);
  return trial;
}

Trial SimulateTrial(const Scene& scene, const CorruptionSpec& spec) {
  Trial trial = Corrupt(GroundTruthTdoa(scene), spec);
  trial.scene = scene;
  return trial;
}

double SnrDb(const TdoaMatrix& truth, const TdoaMatrix& estimate) {
  if (truth.size() != estimate.size() || truth.size() < 2) {
    throw Error(ErrorCode::kInvalidInput,
                "SNR needs two matrices of equal size n >= 2");
  }
  double signal = 0.0, error = 0.0;
  for (Index i = 1; i < truth.size(); ++i) {
    const double t = truth(i, 0);
    const double d = estimate(i, 0) - t;
    signal += t * t;
    error += d * d;
  }
  if (signal == 0.0) {
    throw Error(ErrorCode::kDegenerate,
                "SNR undefined: reference delays of the truth are all zero");
  }
  if (error <= kPerfectRelativeEnergy * signal) return kPerfectSnrDb;
  return 10.0 * std::log10(signal / error);
}

Eigen::VectorXd ReferenceColumn(const TdoaMatrix& m) {
  if (m.size() < 2) return Eigen::VectorXd();
  return m.entries().col(0).tail(m.size() - 1);
}

}  // namespace tdoamat
