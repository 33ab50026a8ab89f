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

#include "tdoamat/mask.hpp"

#include <string>

#include "tdoamat/error.hpp"

namespace tdoamat {

using Eigen::Index;

Mask Mask::Full(Index n) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "mask size must be >= 1");
  Mask m;
  m.l_ = Eigen::MatrixXd::Ones(n, n);
  return m;
}

Mask Mask::FromMissingPairs(Index n, const std::vector<IndexPair>& missing) {
  Mask m = Full(n);
  for (const IndexPair& p : missing) {
    if (p.row < 0 || p.col < 0 || p.row >= n || p.col >= n) {
      throw Error(ErrorCode::kInvalidInput,
                  "missing pair (" + std::to_string(p.row) + ", " +
                      std::to_string(p.col) + ") is out of range for n = " +
                      std::to_string(n));
    }
    if (p.row == p.col) {
      throw Error(ErrorCode::kInvalidInput,
                  "diagonal entry (" + std::to_string(p.row) + ", " +
                      std::to_string(p.col) + ") cannot be missing");
    }
    m.l_(p.row, p.col) = 0.0;
    m.l_(p.col, p.row) = 0.0;
  }
  return m;
}

Mask Mask::FromMatrix(const Eigen::MatrixXd& l) {
  if (l.rows() != l.cols() || l.rows() < 1) {
    throw Error(ErrorCode::kInvalidInput, "mask must be a non-empty square matrix");
  }
  for (Index i = 0; i < l.rows(); ++i) {
    if (l(i, i) != 1.0) {
      throw Error(ErrorCode::kInvalidInput, "mask diagonal must be all ones");
    }
    for (Index j = 0; j < l.cols(); ++j) {
      if ((l(i, j) != 0.0 && l(i, j) != 1.0) || l(i, j) != l(j, i)) {
        throw Error(ErrorCode::kInvalidInput,
                    "mask must be symmetric and binary, offending entry (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  Mask m;
  m.l_ = l;
  return m;
}

Eigen::VectorXd Mask::Beta() const { return l_.rowwise().sum(); }

std::vector<IndexPair> Mask::MissingPairs() const {
  std::vector<IndexPair> out;
  for (Index i = 0; i < size(); ++i) {
    for (Index j = i + 1; j < size(); ++j) {
      if (!Visible(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

std::size_t Mask::MissingPairCount() const {
  return static_cast<std::size_t>((l_.array() == 0.0).count() / 2);
}

std::size_t Mask::VisiblePairCount() const {
  const auto n = static_cast<std::size_t>(size());
  return n * (n - 1) / 2 - MissingPairCount();
}

TdoaMatrix Mask::Apply(const TdoaMatrix& m) const {
  if (m.size() != size()) {
    throw Error(ErrorCode::kInvalidInput, "mask and matrix sizes differ");
  }
  return TdoaMatrix::SkewPart(m.entries().cwiseProduct(l_));
}

}  // namespace tdoamat
