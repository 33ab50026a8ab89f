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

#include "tdoamat/tdoa_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdoamat/error.hpp"

namespace tdoamat {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void RequireFinite(const MatrixXd& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(what) + " contains non-finite values");
  }
}

}  // namespace

TdoaMatrix::TdoaMatrix(Index n) : m_(MatrixXd::Zero(n, n)) {}

TdoaMatrix TdoaMatrix::FromEntries(const MatrixXd& entries, double tolerance) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::kInvalidInput, "TDOA matrix must be square");
  }
  RequireFinite(entries, "TDOA matrix");
  const Index n = entries.rows();
  double worst = 0.0;
  Index worst_i = 0, worst_j = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double asym = std::abs(entries(i, j) + entries(j, i));
      if (asym > worst) {
        worst = asym;
        worst_i = i;
        worst_j = j;
      }
    }
  }
  if (worst > tolerance) {
    std::ostringstream msg;
    msg << "matrix is not skew-symmetric: entry (" << worst_i << ", "
        << worst_j << ") = " << entries(worst_i, worst_j) << " vs ("
        << worst_j << ", " << worst_i << ") = " << entries(worst_j, worst_i)
        << ", |M(i,j) + M(j,i)| = " << worst << " s exceeds " << tolerance
        << " s";
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  return SkewPart(entries);
}

TdoaMatrix TdoaMatrix::SkewPart(const MatrixXd& entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::kInvalidInput, "TDOA matrix must be square");
  }
  RequireFinite(entries, "TDOA matrix");
  TdoaMatrix m;
  // + 0.0 turns negative zeros (e.g. from masking) into positive ones.
  m.m_ = ((entries - entries.transpose()) / 2.0).array() + 0.0;
  return m;
}

void TdoaMatrix::Set(Index i, Index j, double value) {
  if (i == j) {
    throw Error(ErrorCode::kInvalidInput, "diagonal of a TDOA matrix is zero");
  }
  m_(i, j) = value;
  m_(j, i) = 0.0 - value;  // keeps zeros positive
}

TdoaMatrix FromToas(const VectorXd& toas) {
  if (toas.size() < 2) {
    throw Error(ErrorCode::kInvalidInput,
                "at least two times of arrival are required");
  }
  if (!toas.allFinite()) {
    throw Error(ErrorCode::kInvalidInput,
                "times of arrival contain non-finite values");
  }
  const Index n = toas.size();
  TdoaMatrix m(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) m.Set(i, j, toas(i) - toas(j));
  }
  return m;
}

TdoaMatrix Compose(const VectorXd& x) {
  if (x.size() < 1) {
    throw Error(ErrorCode::kInvalidInput, "gauge vector is empty");
  }
  if (!x.allFinite()) {
    throw Error(ErrorCode::kInvalidInput,
                "gauge vector contains non-finite values");
  }
  const Index n = x.size();
  const VectorXd projected = x.array() - x.mean();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  TdoaMatrix m(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      m.Set(i, j, (projected(i) - projected(j)) * scale);
    }
  }
  return m;
}

GaugeVector Decompose(const TdoaMatrix& m) {
  const Index n = m.size();
  GaugeVector g;
  if (n == 0) return g;
  g.x = m.entries().rowwise().sum() / std::sqrt(static_cast<double>(n));
  g.constraint_residual = std::abs(g.x.sum());
  return g;
}

SvdPair SvdParams(const TdoaMatrix& m) {
  const GaugeVector g = Decompose(m);
  const double sigma = g.x.size() > 0 ? g.x.norm() : 0.0;
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kDegenerate,
                "zero TDOA matrix has no singular direction (sigma = 0)");
  }
  return SvdPair{g.x / sigma, sigma};
}

TdoaMatrix FromSvdParams(const SvdPair& svd) {
  return Compose(svd.sigma * svd.u_hat);
}

ConsistencyReport IsConsistent(const TdoaMatrix& m, double tol) {
  ConsistencyReport report;
  if (m.size() == 0) {
    report.consistent = true;
    return report;
  }
  const TdoaMatrix projected = Compose(Decompose(m).x);
  report.residual = (m.entries() - projected.entries()).norm();
  report.consistent =
      report.residual <= tol * std::max(1.0, m.FrobeniusNorm());
  return report;
}

}  // namespace tdoamat
