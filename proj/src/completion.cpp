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

#include "tdoamat/completion.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "alternation.hpp"
#include "tdoamat/denoise.hpp"
#include "tdoamat/error.hpp"

namespace tdoamat {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kRankTolerance = 1e-10;
// Below this reciprocal condition estimate the LDLT result is not trusted.
constexpr double kMinLdltRcond = 1e-8;

// Connected groups of sensors in the graph of visible pairs.
std::vector<std::vector<Index>> VisibleComponents(const Mask& mask) {
  const Index n = mask.size();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> groups;
  for (Index start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    groups.emplace_back();
    std::vector<Index> stack{start};
    label[start] = static_cast<int>(groups.size() - 1);
    while (!stack.empty()) {
      const Index i = stack.back();
      stack.pop_back();
      groups.back().push_back(i);
      for (Index j = 0; j < n; ++j) {
        if (label[j] < 0 && mask.Visible(i, j)) {
          label[j] = label[i];
          stack.push_back(j);
        }
      }
    }
  }
  return groups;
}

std::string DescribeSingularity(const Mask& mask, const Recoverability& r) {
  std::ostringstream msg;
  msg << "missing data is not uniquely recoverable: D_beta + Lbar is "
         "rank-deficient (singular values "
      << r.min_singular_value << " .. " << r.max_singular_value << ")";
  const auto groups = VisibleComponents(mask);
  if (groups.size() > 1) {
    msg << "; visible pairs split the sensors into " << groups.size()
        << " disconnected groups:";
    for (const auto& g : groups) {
      msg << " {";
      for (std::size_t k = 0; k < g.size(); ++k) msg << (k ? "," : "") << g[k];
      msg << "}";
    }
  }
  return msg.str();
}

Recoverability FromSingularValues(const VectorXd& s) {
  Recoverability r;
  r.max_singular_value = s.size() ? s(0) : 0.0;
  r.min_singular_value = s.size() ? s(s.size() - 1) : 0.0;
  r.recoverable = r.min_singular_value > kRankTolerance * r.max_singular_value;
  r.condition = r.min_singular_value > 0.0
                    ? r.max_singular_value / r.min_singular_value
                    : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace

MatrixXd RecoverabilitySystem(const Mask& mask) {
  const MatrixXd& l = mask.matrix();
  MatrixXd a = MatrixXd::Ones(l.rows(), l.cols()) - l;
  a.diagonal() += mask.Beta();
  return a;
}

Recoverability CheckRecoverability(const Mask& mask) {
  Eigen::JacobiSVD<MatrixXd> svd(RecoverabilitySystem(mask));
  return FromSingularValues(svd.singularValues());
}

CompletionSolver::CompletionSolver(const Mask& mask, CompletionMode mode)
    : mask_(mask) {
  const MatrixXd a = RecoverabilitySystem(mask_);
  // The LDLT condition estimate can miss exact singularity, so rank is
  // decided from the singular values.
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Recoverability r = FromSingularValues(svd.singularValues());
  if (r.recoverable) {
    ldlt_.compute(a);
    if (ldlt_.info() == Eigen::Success && ldlt_.rcond() > kMinLdltRcond) return;
  } else if (mode == CompletionMode::kUnique) {
    throw Error(ErrorCode::kNotRecoverable, DescribeSingularity(mask_, r));
  }
  VectorXd inv_s = svd.singularValues();
  for (Index i = 0; i < inv_s.size(); ++i) {
    inv_s(i) = inv_s(i) > kRankTolerance * r.max_singular_value
                   ? 1.0 / inv_s(i)
                   : 0.0;
  }
  inverse_ = svd.matrixV() * inv_s.asDiagonal() * svd.matrixU().transpose();
  use_inverse_ = true;
  non_unique_ = !r.recoverable;
}

VectorXd CompletionSolver::SolveRowSums(const TdoaMatrix& observed) const {
  const VectorXd row_sums = observed.entries().rowwise().sum();
  return use_inverse_ ? VectorXd(inverse_ * row_sums)
                      : VectorXd(ldlt_.solve(row_sums));
}

TdoaMatrix CompletionSolver::Complete(const TdoaMatrix& m_tilde) const {
  // Same result as the general solve; taking the projection keeps the
  // full-mask case bit-identical to plain denoising.
  if (mask_.IsFull()) return DenoiseClosedForm(m_tilde);
  const VectorXd q = SolveRowSums(mask_.Apply(m_tilde));
  const Index n = q.size();
  TdoaMatrix out(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) out.Set(i, j, q(i) - q(j));
  }
  return out;
}

VectorXd CompletionSolver::Gauge(const TdoaMatrix& m_tilde) const {
  const double root_n = std::sqrt(static_cast<double>(mask_.size()));
  return root_n * SolveRowSums(mask_.Apply(m_tilde));
}

TdoaMatrix Complete(const TdoaMatrix& m_tilde, const Mask& mask,
                    CompletionMode mode) {
  if (m_tilde.size() != mask.size()) {
    throw Error(ErrorCode::kInvalidInput, "mask and matrix sizes differ");
  }
  return CompletionSolver(mask, mode).Complete(m_tilde);
}

RobustResult RobustComplete(const TdoaMatrix& m_tilde, const Mask& mask,
                            const RobustOptions& options, CompletionMode mode) {
  if (m_tilde.size() != mask.size()) {
    throw Error(ErrorCode::kInvalidInput, "mask and matrix sizes differ");
  }
  const CompletionSolver solver(mask, mode);
  return detail::Alternate(
      mask.Apply(m_tilde), mask,
      [&solver](const TdoaMatrix& x) { return solver.Complete(x); },
      [&mask](const TdoaMatrix& r, std::size_t k) { return HardThreshold2k(r, k, mask); },
      options);
}

}  // namespace tdoamat
