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

#ifndef TDOAMAT_SRC_ALTERNATION_HPP_
#define TDOAMAT_SRC_ALTERNATION_HPP_

#include <cmath>

#include "tdoamat/completion.hpp"
#include "tdoamat/error.hpp"
#include "tdoamat/robust.hpp"

namespace tdoamat::detail {

void ValidateRobustOptions(const RobustOptions& options);

// Least-squares M over the visible pairs outside the support of S, followed
// by a fresh threshold. Kept only if the objective does not rise.
template <typename Threshold>
void RefitSupport(const TdoaMatrix& observed, const Mask& mask, Threshold threshold,
                  std::size_t k, RobustResult& result) {
  const std::vector<IndexPair> support = result.s_star.Support();
  if (support.empty() || result.objective_trace.empty()) return;
  std::vector<IndexPair> hidden = mask.MissingPairs();
  hidden.insert(hidden.end(), support.begin(), support.end());
  const Mask kept = Mask::FromMissingPairs(mask.size(), hidden);
  if (!CheckRecoverability(kept).recoverable) return;
  TdoaMatrix m = CompletionSolver(kept).Complete(observed);
  const Eigen::MatrixXd fitted = m.entries().cwiseProduct(mask.matrix());
  OutlierMatrix s = threshold(TdoaMatrix::SkewPart(observed.entries() - fitted), k);
  const double objective = (observed.entries() - fitted - s.entries()).squaredNorm();
  if (!(objective <= result.objective_trace.back())) return;
  result.m_star = std::move(m);
  result.s_star = std::move(s);
  result.objective_trace.push_back(objective);
  result.refit_applied = true;
}

// Shared loop of the robust solvers. `observed` is L o M~ (L = all ones for
// plain robust denoising). `fit` maps an observed-domain matrix to the best
// consistent TDOA matrix; `threshold(residual, budget)` maps a residual to an
// outlier matrix of at most `budget` pairs supported on visible entries.
template <typename Fit, typename Threshold>
RobustResult Alternate(const TdoaMatrix& observed, const Mask& mask, Fit fit,
                       Threshold threshold, const RobustOptions& options) {
  ValidateRobustOptions(options);
  const Eigen::Index n = observed.size();
  RobustResult result;
  result.s_star = OutlierMatrix(n);
  const double scale = observed.entries().squaredNorm();
  if (scale == 0.0) {
    result.m_star = TdoaMatrix(n);
    result.converged = true;
    return result;
  }
  const Eigen::MatrixXd& l = mask.matrix();
  const std::size_t first_budget = options.grow_budget && options.k > 0 ? 1 : options.k;
  std::size_t t = 0;
  for (std::size_t budget = first_budget; budget <= options.k || budget == 0; ++budget) {
    // Earlier stages only seed S, so they always stop on the change rule.
    const bool last = budget >= options.k;
    const bool level_rule = last && options.stop_rule == StopRule::kObjectiveLevel;
    double previous = 0.0;
    bool stage_converged = false;
    for (std::size_t stage_t = 1; t < options.max_iter; ++stage_t) {
      ++t;
      result.m_star = fit(TdoaMatrix::SkewPart(observed.entries() -
                                               result.s_star.entries()));
      const Eigen::MatrixXd fitted = result.m_star.entries().cwiseProduct(l);
      result.s_star =
          threshold(TdoaMatrix::SkewPart(observed.entries() - fitted), budget);
      const double objective =
          (observed.entries() - fitted - result.s_star.entries()).squaredNorm();
      result.objective_trace.push_back(objective);
      const double level = objective / scale;
      stage_converged =
          level_rule ? level < options.eps
                     : (level == 0.0 ||
                        (stage_t > 1 && std::abs(previous - level) < options.eps));
      if (stage_converged) break;
      previous = level;
    }
    result.iterations = t;
    if (last) {
      result.converged = stage_converged;
      break;
    }
  }
  if (options.refit_support && options.k > 0) {
    RefitSupport(observed, mask, threshold, options.k, result);
  }
  return result;
}

}  // namespace tdoamat::detail

#endif  // TDOAMAT_SRC_ALTERNATION_HPP_
