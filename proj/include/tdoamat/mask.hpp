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

#ifndef TDOAMAT_MASK_HPP_
#define TDOAMAT_MASK_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tdoamat/tdoa_matrix.hpp"

namespace tdoamat {

// Availability matrix L: symmetric, binary, unit diagonal. L(i, j) = 1 when
// the delay between sensors i and j was measured.
class Mask {
 public:
  Mask() = default;

  static Mask Full(Eigen::Index n);

  // Pairs may be given in either orientation; duplicates are ignored.
  static Mask FromMissingPairs(Eigen::Index n,
                               const std::vector<IndexPair>& missing);

  // Validates symmetry, binary entries and the unit diagonal.
  static Mask FromMatrix(const Eigen::MatrixXd& l);

  Eigen::Index size() const { return l_.rows(); }
  bool Visible(Eigen::Index i, Eigen::Index j) const { return l_(i, j) != 0.0; }
  const Eigen::MatrixXd& matrix() const { return l_; }

  // beta_i = number of available entries in row i, the diagonal included.
  Eigen::VectorXd Beta() const;

  // Missing positions with row < col, ascending.
  std::vector<IndexPair> MissingPairs() const;
  std::size_t MissingPairCount() const;
  std::size_t VisiblePairCount() const;
  bool IsFull() const { return MissingPairCount() == 0; }

  // L o M, the measured matrix with unknown entries zeroed.
  TdoaMatrix Apply(const TdoaMatrix& m) const;

 private:
  Eigen::MatrixXd l_;
};

}  // namespace tdoamat

#endif  // TDOAMAT_MASK_HPP_
