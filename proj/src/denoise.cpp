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

#include "tdoamat/denoise.hpp"

namespace tdoamat {

TdoaMatrix DenoiseClosedForm(const TdoaMatrix& m_tilde) {
  if (m_tilde.size() == 0) return m_tilde;
  return Compose(Decompose(m_tilde).x);
}

TdoaMatrix DenoiseElementForm(const TdoaMatrix& m_tilde) {
  const Eigen::Index n = m_tilde.size();
  const Eigen::MatrixXd& m = m_tilde.entries();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double sum = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) sum += m(i, k) + m(k, j);
      out(i, j) = sum / static_cast<double>(n);
    }
  }
  return TdoaMatrix::SkewPart(out);
}

TdoaMatrix Denoise(const TdoaMatrix& m_tilde, DenoiseMethod method) {
  return method == DenoiseMethod::kElementForm ? DenoiseElementForm(m_tilde)
                                               : DenoiseClosedForm(m_tilde);
}

}  // namespace tdoamat
