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

// TDOA matrix completion under a known availability mask.
//
// The least-squares fit of a consistent matrix to the visible entries has
// the closed form
//
//   M* = Q (L o M~) 1 1^T + 1 1^T (L o M~) Q,   Q = (D_beta + Lbar)^-1,
//
// where D_beta holds the per-sensor count of available entries and Lbar is
// the complement of L. D_beta + Lbar equals the Laplacian of the graph of
// visible pairs plus 1 1^T, so it is invertible exactly when that graph is
// connected.

#ifndef TDOAMAT_COMPLETION_HPP_
#define TDOAMAT_COMPLETION_HPP_

#include <Eigen/Dense>

#include "tdoamat/mask.hpp"
#include "tdoamat/robust.hpp"
#include "tdoamat/tdoa_matrix.hpp"

namespace tdoamat {

enum class CompletionMode {
  // Non-recoverable masks are an error.
  kUnique,
  // Minimum-norm pseudo-inverse solution; not unique when the mask is not
  // recoverable.
  kPseudoInverse,
};

struct Recoverability {
  bool recoverable = false;
  // Largest over smallest singular value of D_beta + Lbar; +inf if singular.
  double condition = 0.0;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
};

// D_beta + Lbar.
Eigen::MatrixXd RecoverabilitySystem(const Mask& mask);

// Full rank means smallest singular value > 1e-10 * largest.
Recoverability CheckRecoverability(const Mask& mask);

// Completion operator for one mask. Factorizes D_beta + Lbar once so it can
// be applied to many matrices.
class CompletionSolver {
 public:
  // Throws Error(kNotRecoverable) in kUnique mode when the mask leaves the
  // solution undetermined.
  explicit CompletionSolver(const Mask& mask,
                            CompletionMode mode = CompletionMode::kUnique);

  const Mask& mask() const { return mask_; }
  // True when the pseudo-inverse is in use because the system is singular.
  bool non_unique() const { return non_unique_; }

  // Unknown entries of m_tilde are ignored.
  TdoaMatrix Complete(const TdoaMatrix& m_tilde) const;

  // Gauge vector of the solution, x* = n Q (L o M~) 1 / sqrt(n).
  Eigen::VectorXd Gauge(const TdoaMatrix& m_tilde) const;

 private:
  // q = Q (L o M~) 1; the solution is M*(i, j) = q_i - q_j.
  Eigen::VectorXd SolveRowSums(const TdoaMatrix& observed) const;

  Mask mask_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  Eigen::MatrixXd inverse_;
  bool use_inverse_ = false;
  bool non_unique_ = false;
};

TdoaMatrix Complete(const TdoaMatrix& m_tilde, const Mask& mask,
                    CompletionMode mode = CompletionMode::kUnique);

// Robust denoising restricted to visible entries: alternates the completion
// closed form with hard thresholding of L o (M~ - M_t). k counts visible
// pairs only, and s_star is zero wherever the mask is.
RobustResult RobustComplete(const TdoaMatrix& m_tilde, const Mask& mask,
                            const RobustOptions& options,
                            CompletionMode mode = CompletionMode::kUnique);

}  // namespace tdoamat

#endif  // TDOAMAT_COMPLETION_HPP_
