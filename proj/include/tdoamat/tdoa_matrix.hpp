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

// TDOA matrix algebra.
//
// A TDOA matrix M holds every pairwise time difference of arrival,
// M(i, j) = tau_i - tau_j, so it is skew-symmetric and, when noise free,
// of rank 2 (or 0 when all arrival times are equal). Every such matrix is
// parameterized by a gauge vector x orthogonal to the all-ones direction:
//
//   M = x 1^T / sqrt(n) - 1 x^T / sqrt(n),   x = M 1 / sqrt(n).
//
// compose() and decompose() implement this bijection. All times are in
// seconds.

#ifndef TDOAMAT_TDOA_MATRIX_HPP_
#define TDOAMAT_TDOA_MATRIX_HPP_

#include <compare>

#include <Eigen/Dense>

namespace tdoamat {

// Matrix position; as a pair key it is normalized to row < col.
struct IndexPair {
  Eigen::Index row = 0;
  Eigen::Index col = 0;

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

// Largest |M(i,j) + M(j,i)| accepted when building a matrix from external
// entries, in seconds.
inline constexpr double kSkewTolerance = 1e-9;

// Dense, exactly skew-symmetric n x n matrix of pairwise delays.
class TdoaMatrix {
 public:
  TdoaMatrix() = default;

  // Zero matrix of size n.
  explicit TdoaMatrix(Eigen::Index n);

  // Validates finiteness and skew-symmetry within `tolerance` (diagonal
  // included), then stores the exact skew part (A - A^T) / 2. Throws
  // Error(kInvalidInput) naming the worst offending entry.
  static TdoaMatrix FromEntries(const Eigen::MatrixXd& entries,
                                double tolerance = kSkewTolerance);

  // Skew part (A - A^T) / 2 of any finite square matrix. Bit-exact identity
  // on inputs that are already skew-symmetric.
  static TdoaMatrix SkewPart(const Eigen::MatrixXd& entries);

  Eigen::Index size() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  // Sets M(i,j) = value and M(j,i) = -value. Requires i != j.
  void Set(Eigen::Index i, Eigen::Index j, double value);

  const Eigen::MatrixXd& entries() const { return m_; }
  double FrobeniusNorm() const { return m_.norm(); }

 private:
  Eigen::MatrixXd m_;
};

struct GaugeVector {
  Eigen::VectorXd x;
  // |sum_i x_i|, zero up to rounding.
  double constraint_residual = 0.0;
};

// Lemma-style SVD: M = sigma * (u_hat 1^T - 1 u_hat^T) with 1 normalized.
struct SvdPair {
  Eigen::VectorXd u_hat;
  double sigma = 0.0;
};

struct ConsistencyReport {
  bool consistent = false;
  // ||M - compose(decompose(M))||_F, seconds.
  double residual = 0.0;
};

// M(i, j) = toas(i) - toas(j). Requires n >= 2 and finite entries.
TdoaMatrix FromToas(const Eigen::VectorXd& toas);

// Projects x onto the hyperplane orthogonal to the all-ones vector, then
// builds M(i, j) = (x_i - x_j) / sqrt(n).
TdoaMatrix Compose(const Eigen::VectorXd& x);

// x = M 1 / sqrt(n).
GaugeVector Decompose(const TdoaMatrix& m);

// Throws Error(kDegenerate) for the zero matrix. Meaningful only for
// consistent input; the result is not checked against m.
SvdPair SvdParams(const TdoaMatrix& m);

// Rebuilds sigma * (u_hat 1^T - 1 u_hat^T), 1 being the unit all-ones vector.
TdoaMatrix FromSvdParams(const SvdPair& svd);

// Consistent iff ||M - compose(decompose(M))||_F <= tol * max(1, ||M||_F).
ConsistencyReport IsConsistent(const TdoaMatrix& m, double tol);

}  // namespace tdoamat

#endif  // TDOAMAT_TDOA_MATRIX_HPP_
