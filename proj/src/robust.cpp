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

#include "tdoamat/robust.hpp"

#include <algorithm>
#include <cmath>

#include "alternation.hpp"
#include "tdoamat/denoise.hpp"
#include "tdoamat/error.hpp"

namespace tdoamat {

using Eigen::Index;

namespace {

struct Candidate {
  double magnitude;
  IndexPair pair;
};

// Larger magnitude first, then smaller (row, col).
bool Ranks(const Candidate& a, const Candidate& b) {
  if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
  return a.pair < b.pair;
}

OutlierMatrix KeepLargestPairs(const TdoaMatrix& residual, std::size_t k,
                               const Mask* visible) {
  const Index n = residual.size();
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (visible != nullptr && !visible->Visible(i, j)) continue;
      candidates.push_back({std::abs(residual(i, j)), {i, j}});
    }
  }
  const bool clamped = k > candidates.size();
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(),
                    candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), Ranks);
  TdoaMatrix kept(n);
  for (std::size_t c = 0; c < keep; ++c) {
    const IndexPair& p = candidates[c].pair;
    kept.Set(p.row, p.col, residual(p.row, p.col));
  }
  return OutlierMatrix(std::move(kept), clamped);
}

}  // namespace

std::vector<IndexPair> OutlierMatrix::Support() const {
  std::vector<IndexPair> out;
  for (Index i = 0; i < size(); ++i) {
    for (Index j = i + 1; j < size(); ++j) {
      if (values_(i, j) != 0.0) out.push_back({i, j});
    }
  }
  return out;
}

std::size_t OutlierMatrix::NonZeroCount() const {
  return static_cast<std::size_t>((entries().array() != 0.0).count());
}

OutlierMatrix HardThreshold2k(const TdoaMatrix& residual, std::size_t k) {
  return KeepLargestPairs(residual, k, nullptr);
}

OutlierMatrix HardThreshold2k(const TdoaMatrix& residual, std::size_t k,
                              const Mask& visible) {
  if (visible.size() != residual.size()) {
    throw Error(ErrorCode::kInvalidInput, "mask and matrix sizes differ");
  }
  return KeepLargestPairs(residual, k, &visible);
}

namespace detail {

void ValidateRobustOptions(const RobustOptions& options) {
  if (!(options.eps > 0.0) || !std::isfinite(options.eps)) {
    throw Error(ErrorCode::kInvalidInput, "eps must be a positive number");
  }
  if (options.max_iter == 0) {
    throw Error(ErrorCode::kInvalidInput, "max_iter must be at least 1");
  }
}

}  // namespace detail

RobustResult RobustDenoise(const TdoaMatrix& m_tilde,
                           const RobustOptions& options) {
  const Mask full = Mask::Full(std::max<Index>(m_tilde.size(), 1));
  return detail::Alternate(
      m_tilde, full, [](const TdoaMatrix& x) { return DenoiseClosedForm(x); },
      [](const TdoaMatrix& r, std::size_t k) { return HardThreshold2k(r, k); }, options);
}

}  // namespace tdoamat
