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

// Robust denoising: split a measured matrix into a consistent TDOA matrix
// plus a sparse skew-symmetric outlier matrix by alternating two closed-form
// steps, a projection onto consistent matrices and hard thresholding of the
// residual to its k largest symmetric pairs.

#ifndef TDOAMAT_ROBUST_HPP_
#define TDOAMAT_ROBUST_HPP_

#include <cstddef>
#include <vector>

#include "tdoamat/mask.hpp"
#include "tdoamat/tdoa_matrix.hpp"

namespace tdoamat {

// Sparse skew-symmetric matrix, stored dense.
class OutlierMatrix {
 public:
  OutlierMatrix() = default;
  explicit OutlierMatrix(Eigen::Index n) : values_(n) {}
  OutlierMatrix(TdoaMatrix values, bool budget_clamped)
      : values_(std::move(values)), budget_clamped_(budget_clamped) {}

  Eigen::Index size() const { return values_.size(); }
  const TdoaMatrix& values() const { return values_; }
  const Eigen::MatrixXd& entries() const { return values_.entries(); }

  // Nonzero positions with row < col, ascending.
  std::vector<IndexPair> Support() const;
  // Nonzero entries counting both orientations, i.e. 2 * Support().size().
  std::size_t NonZeroCount() const;

  // True when the requested budget exceeded the number of candidate pairs
  // and the whole candidate set was kept.
  bool budget_clamped() const { return budget_clamped_; }

 private:
  TdoaMatrix values_;
  bool budget_clamped_ = false;
};

// Keeps the 2k largest-magnitude entries (k symmetric pairs) of a
// skew-symmetric residual and zeroes the rest. Equal magnitudes are broken
// in favour of the lexicographically smaller (row, col).
OutlierMatrix HardThreshold2k(const TdoaMatrix& residual, std::size_t k);

// As above, with candidates restricted to positions visible in the mask.
OutlierMatrix HardThreshold2k(const TdoaMatrix& residual, std::size_t k,
                              const Mask& visible);

enum class StopRule {
  // Stop when the normalized objective changes by less than eps.
  kObjectiveChange,
  // Stop when the normalized objective itself falls below eps.
  kObjectiveLevel,
};

struct RobustOptions {
  std::size_t k = 0;
  double eps = 1e-10;
  std::size_t max_iter = 1000;
  StopRule stop_rule = StopRule::kObjectiveChange;
  // After the loop, refit M on the visible pairs outside the outlier support
  // and threshold once more. This lands on the point the alternation
  // converges to for that support, which a loose eps stops short of. The
  // step never increases the objective. Skipped when k = 0 or when the
  // remaining pairs do not determine M.
  bool refit_support = true;
  // Run the alternation with budgets 1, 2, ..., k in turn, each stage
  // starting from the previous S. Large outliers leave the residual first,
  // so smaller ones are no longer hidden by their spread along a row. The
  // objective stays non-increasing across stages. false gives the plain
  // single-budget alternation from S = 0.
  bool grow_budget = true;
};

struct RobustResult {
  TdoaMatrix m_star;
  OutlierMatrix s_star;
  std::size_t iterations = 0;
  // ||M~ - M_t - S_t||_F^2 after every iteration (masked when completing),
  // plus one final entry when the support refit was applied.
  std::vector<double> objective_trace;
  bool converged = false;
  bool refit_applied = false;
};

// Non-convergence within max_iter is reported through `converged`, not
// thrown. Throws Error(kInvalidInput) for eps <= 0 or max_iter == 0.
RobustResult RobustDenoise(const TdoaMatrix& m_tilde,
                           const RobustOptions& options);

}  // namespace tdoamat

#endif  // TDOAMAT_ROBUST_HPP_
