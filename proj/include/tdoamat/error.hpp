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

#ifndef TDOAMAT_ERROR_HPP_
#define TDOAMAT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tdoamat {

// Failure categories. The numeric values are mirrored by tdoa_status in the
// C header, keep them in sync.
enum class ErrorCode : int {
  kInvalidInput = 1,
  kDegenerate = 2,
  kNotRecoverable = 3,
  kNotConverged = 4,
  kLocalizationFailed = 5,
  kIo = 6,
  kParse = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tdoamat

#endif  // TDOAMAT_ERROR_HPP_
