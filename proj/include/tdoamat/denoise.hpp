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

#ifndef TDOAMAT_DENOISE_HPP_
#define TDOAMAT_DENOISE_HPP_

#include "tdoamat/tdoa_matrix.hpp"

namespace tdoamat {

enum class DenoiseMethod { kClosedForm, kElementForm };

// Frobenius-closest consistent TDOA matrix to m_tilde, computed through the
// gauge round trip Compose(Decompose(m_tilde)) in O(n^2).
TdoaMatrix DenoiseClosedForm(const TdoaMatrix& m_tilde);

// Same projection evaluated element by element,
//   M*(i, j) = (1/n) * sum_k (M(i, k) + M(k, j)),
// which is the Gauss-Markov estimator of the pairwise delays. O(n^3); kept as
// an independent route for cross-checking the closed form.
TdoaMatrix DenoiseElementForm(const TdoaMatrix& m_tilde);

TdoaMatrix Denoise(const TdoaMatrix& m_tilde, DenoiseMethod method);

}  // namespace tdoamat

#endif  // TDOAMAT_DENOISE_HPP_
