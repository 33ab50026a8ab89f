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

#include "doctest.h"
#include "tdoamat/denoise.hpp"
#include "tdoamat/tdoa_matrix.hpp"
#include "test_util.hpp"

using Eigen::MatrixXd;
using tdoamat::TdoaMatrix;

TEST_CASE("closed form matches the element-wise average") {
  testutil::Random rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const TdoaMatrix m = TdoaMatrix::FromEntries(rng.Skew(10, 1e-2));
    const TdoaMatrix a = tdoamat::DenoiseClosedForm(m);
    const TdoaMatrix b = tdoamat::DenoiseElementForm(m);
    CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("denoise is the Frobenius projection") {
  testutil::Random rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = rng.Int(2, 5);
    const MatrixXd noisy = rng.Skew(n, 1.0);
    const MatrixXd oracle = testutil::LeastSquaresFit(noisy, MatrixXd::Ones(n, n));
    const TdoaMatrix got = tdoamat::Denoise(TdoaMatrix::FromEntries(noisy),
                                            tdoamat::DenoiseMethod::kClosedForm);
    CHECK((got.entries() - oracle).cwiseAbs().maxCoeff() < 1e-12);

    // No perturbation of the gauge vector lowers the residual.
    const Eigen::VectorXd x = tdoamat::Decompose(got).x;
    const double best = (noisy - got.entries()).squaredNorm();
    for (int probe = 0; probe < 20; ++probe) {
      const Eigen::VectorXd y = x + rng.Vector(n, 1e-3);
      CHECK((noisy - tdoamat::Compose(y).entries()).squaredNorm() >= best - 1e-15);
    }
  }
}

TEST_CASE("consistent matrices are fixed points") {
  testutil::Random rng(23);
  const TdoaMatrix m = tdoamat::FromToas(rng.Vector(8, 1e-3));
  CHECK(testutil::RelativeError(tdoamat::DenoiseClosedForm(m).entries(), m.entries()) <
        1e-13);
  const TdoaMatrix once = tdoamat::DenoiseClosedForm(TdoaMatrix::FromEntries(rng.Skew(8, 1.0)));
  CHECK(testutil::RelativeError(tdoamat::DenoiseClosedForm(once).entries(),
                                once.entries()) < 1e-13);
}

TEST_CASE("denoising reduces Gaussian noise") {
  testutil::Random rng(24);
  double raw = 0.0, cleaned = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const TdoaMatrix truth = tdoamat::FromToas(rng.Vector(10, 3e-3));
    MatrixXd noisy = truth.entries();
    for (Eigen::Index i = 0; i < 10; ++i) {
      for (Eigen::Index j = i + 1; j < 10; ++j) {
        noisy(i, j) += rng.Normal(1e-5);
        noisy(j, i) = -noisy(i, j);
      }
    }
    raw += (noisy - truth.entries()).squaredNorm();
    cleaned += (tdoamat::DenoiseClosedForm(TdoaMatrix::FromEntries(noisy)).entries() -
                truth.entries())
                   .squaredNorm();
  }
  // Projection onto an (n-1)-dimensional subspace of n(n-1)/2 dimensions.
  CHECK(cleaned / raw == doctest::Approx(9.0 / 45.0).epsilon(0.15));
}
