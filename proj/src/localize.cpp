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

#include "tdoamat/localize.hpp"

#include <algorithm>
#include <cmath>

#include "tdoamat/error.hpp"

namespace tdoamat {

using Eigen::Index;
using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::Vector4d;
using Eigen::VectorXd;

namespace {

constexpr double kSingularRatio = 1e-12;
// Ranges below this (meters) are floored before being used as weights.
constexpr double kMinRange = 1e-9;

// Weighted least squares with diagonal row weights, via the SVD so that a
// rank-deficient design is detected rather than silently solved.
Vector4d WeightedSolve(const MatrixXd& g, const VectorXd& h,
                       const VectorXd& row_scale) {
  const MatrixXd gw = row_scale.asDiagonal() * g;
  const VectorXd hw = row_scale.cwiseProduct(h);
  Eigen::JacobiSVD<MatrixXd> svd(gw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  if (!(s(s.size() - 1) > kSingularRatio * s(0))) {
    throw Error(ErrorCode::kLocalizationFailed,
                "degenerate sensor geometry: stage-one system is singular");
  }
  return svd.solve(hw);
}

}  // namespace

Vector3d LocalizeChanHo(const VectorXd& tdoa_column,
                        const std::vector<Vector3d>& sensors, double speed) {
  const Index n = static_cast<Index>(sensors.size());
  if (n < 5) {
    throw Error(ErrorCode::kInvalidInput,
                "3-D TDOA localization needs at least 5 sensors");
  }
  if (tdoa_column.size() != n - 1) {
    throw Error(ErrorCode::kInvalidInput,
                "expected n - 1 delays relative to the first sensor");
  }
  if (!tdoa_column.allFinite() || !(speed > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite delays or bad speed");
  }

  const Vector3d& ref = sensors[0];
  const Index m = n - 1;
  // Work relative to the reference sensor: s_i - s_1 and K_i - K_1 become
  // |d_i|^2 with d_i = s_i - s_1.
  MatrixXd g(m, 4);
  VectorXd h(m);
  for (Index i = 0; i < m; ++i) {
    const Vector3d d = sensors[static_cast<std::size_t>(i + 1)] - ref;
    const double r = speed * tdoa_column(i);
    g.row(i) << d.x(), d.y(), d.z(), r;
    h(i) = 0.5 * (d.squaredNorm() - r * r);
  }

  // Stage one: identity weighting, then weights 1 / R_i from that estimate.
  const Vector4d first = WeightedSolve(g, h, VectorXd::Ones(m));
  VectorXd scale(m);
  for (Index i = 0; i < m; ++i) {
    const Vector3d d = sensors[static_cast<std::size_t>(i + 1)] - ref;
    scale(i) = 1.0 / std::max((first.head<3>() - d).norm(), kMinRange);
  }
  const Vector4d za = WeightedSolve(g, h, scale);

  // Stage two on the squared offsets u = (r - s_1)^2 componentwise, with the
  // stage-one covariance propagated through B' = diag(za).
  const MatrixXd gw = scale.asDiagonal() * g;
  const Matrix4d info = gw.transpose() * gw;  // stage-one inverse covariance
  Eigen::Matrix<double, 4, 3> design;
  design << 1, 0, 0,  //
      0, 1, 0,        //
      0, 0, 1,        //
      1, 1, 1;
  const Vector4d h2 = za.cwiseProduct(za);
  Matrix4d w2 = Matrix4d::Identity();
  if ((za.cwiseAbs().array() > kMinRange).all()) {
    const Vector4d inv_b = za.cwiseInverse();
    w2 = inv_b.asDiagonal() * info * inv_b.asDiagonal();
  }
  const Eigen::Matrix3d normal = design.transpose() * w2 * design;
  Eigen::Vector3d squared;
  Eigen::LDLT<Eigen::Matrix3d> ldlt(normal);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
      ldlt.rcond() > kSingularRatio) {
    squared = ldlt.solve(design.transpose() * w2 * h2);
  } else {
    squared = h2.head<3>();
  }

  Vector3d offset;
  for (int a = 0; a < 3; ++a) {
    const double mag = std::sqrt(std::max(squared(a), 0.0));
    offset(a) = za(a) < 0.0 ? -mag : mag;
  }
  return ref + offset;
}

}  // namespace tdoamat
