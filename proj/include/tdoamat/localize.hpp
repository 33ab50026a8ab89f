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

#ifndef TDOAMAT_LOCALIZE_HPP_
#define TDOAMAT_LOCALIZE_HPP_

#include <vector>

#include <Eigen/Dense>

namespace tdoamat {

// Closed-form two-stage weighted least squares TDOA localizer (Chan & Ho).
//
// `tdoa_column` holds tau_i - tau_1 for sensors i = 2..n in seconds, the
// reference column of a TDOA matrix. Stage one solves the linearized system
// in (x, y, z, R_1) with identity weighting, then once more weighted by the
// stage-one ranges. Stage two refines the squared offsets from sensor 1
// using the dependence R_1^2 = |r - s_1|^2 and takes the signs of the
// stage-one estimate.
//
// Requires n >= 5 sensors (Error kInvalidInput); throws
// Error(kLocalizationFailed) when the sensor geometry makes the stage-one
// normal equations singular.
Eigen::Vector3d LocalizeChanHo(const Eigen::VectorXd& tdoa_column,
                               const std::vector<Eigen::Vector3d>& sensors,
                               double speed);

}  // namespace tdoamat

#endif  // TDOAMAT_LOCALIZE_HPP_
