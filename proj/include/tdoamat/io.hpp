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

// File formats.
//
//   matrix JSON  {"n": 3, "unit": "seconds", "entries": [row-major n*n]}
//   matrix CSV   header "tdoa_matrix,n=<n>", then n rows of n values
//   mask JSON    {"n": 3, "missing_pairs": [[0, 2], ...]}
//   outlier JSON {"n": 3, "triplets": [[i, j, value], ...]}, both orientations
//
// Indices are zero-based. Numbers are written in the shortest form that
// reads back to the same double, so canonical files round-trip byte for byte.

#ifndef TDOAMAT_IO_HPP_
#define TDOAMAT_IO_HPP_

#include <string>
#include <string_view>

#include "tdoamat/mask.hpp"
#include "tdoamat/robust.hpp"
#include "tdoamat/scene.hpp"
#include "tdoamat/tdoa_matrix.hpp"

namespace tdoamat {

enum class MatrixFormat { kJson, kCsv };

struct ParseOptions {
  // Replace the input by its skew part (M - M^T) / 2 instead of rejecting
  // asymmetric input.
  bool symmetrize = false;
  double tolerance = kSkewTolerance;
};

// Parse failures throw Error(kParse); well-formed input that is not
// skew-symmetric throws Error(kInvalidInput) citing the worst entry.
TdoaMatrix ParseMatrixJson(std::string_view text, const ParseOptions& options = {});
TdoaMatrix ParseMatrixCsv(std::string_view text, const ParseOptions& options = {});
// JSON when the first non-blank character is '{', CSV otherwise.
TdoaMatrix ParseMatrix(std::string_view text, const ParseOptions& options = {});

std::string MatrixToJson(const TdoaMatrix& m);
std::string MatrixToCsv(const TdoaMatrix& m);
std::string FormatMatrix(const TdoaMatrix& m, MatrixFormat format);

Mask ParseMaskJson(std::string_view text);
std::string MaskToJson(const Mask& mask);

OutlierMatrix ParseOutliersJson(std::string_view text);
std::string OutliersToJson(const OutlierMatrix& s);

std::string TrialToJson(const Trial& trial);

// Shortest round-trip decimal form; "inf", "-inf" and "nan" for
// non-finite values.
std::string FormatNumber(double value);

// Throw Error(kIo).
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

TdoaMatrix LoadMatrix(const std::string& path, const ParseOptions& options = {});
void SaveMatrix(const TdoaMatrix& m, const std::string& path, MatrixFormat format);
Mask LoadMask(const std::string& path);

}  // namespace tdoamat

#endif  // TDOAMAT_IO_HPP_
