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

#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "tdoamat/error.hpp"
#include "tdoamat/io.hpp"
#include "tdoamat/robust.hpp"
#include "tdoamat/scene.hpp"
#include "test_util.hpp"

using tdoamat::TdoaMatrix;

namespace {

tdoamat::ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const tdoamat::Error& e) {
    return e.code();
  }
  return tdoamat::ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("canonical JSON is byte stable") {
  testutil::Random rng(51);
  const TdoaMatrix m = tdoamat::FromToas(rng.Vector(6, 1e-3));
  const std::string json = tdoamat::MatrixToJson(m);
  CHECK(json.rfind("{\"n\":6,\"unit\":\"seconds\",\"entries\":[", 0) == 0);
  const TdoaMatrix back = tdoamat::ParseMatrixJson(json);
  CHECK(back.entries() == m.entries());
  CHECK(tdoamat::MatrixToJson(back) == json);
}

TEST_CASE("formatting differences do not matter") {
  const TdoaMatrix m = tdoamat::ParseMatrix(
      "  {\"entries\": [0, 5e-1,\n -0.5, 0], \"unit\": \"seconds\", \"n\": 2}");
  CHECK(m(0, 1) == 0.5);
  CHECK(tdoamat::MatrixToJson(m) == "{\"n\":2,\"unit\":\"seconds\",\"entries\":[0.0,0.5,-0.5,0.0]}\n");
}

TEST_CASE("CSV round trip and conversion") {
  testutil::Random rng(52);
  const TdoaMatrix m = tdoamat::FromToas(rng.Vector(5, 1e-3));
  const std::string csv = tdoamat::MatrixToCsv(m);
  CHECK(csv.rfind("tdoa_matrix,n=5\n", 0) == 0);
  const TdoaMatrix back = tdoamat::ParseMatrix(csv);
  CHECK(back.entries() == m.entries());
  CHECK(tdoamat::MatrixToJson(back) == tdoamat::MatrixToJson(m));
}

TEST_CASE("asymmetric input names the worst entry") {
  const std::string csv = "tdoa_matrix,n=3\n0,1,2\n-1,0,3\n-2,-3.001,0\n";
  try {
    (void)tdoamat::ParseMatrix(csv);
    FAIL("expected an error");
  } catch (const tdoamat::Error& e) {
    CHECK(e.code() == tdoamat::ErrorCode::kInvalidInput);
    CHECK(std::string(e.what()).find("(1, 2)") != std::string::npos);
  }
  tdoamat::ParseOptions sym;
  sym.symmetrize = true;
  const TdoaMatrix m = tdoamat::ParseMatrix(csv, sym);
  CHECK(m(1, 2) == doctest::Approx(3.0005));
}

TEST_CASE("malformed input") {
  using tdoamat::ErrorCode;
  CHECK(CodeOf([] { (void)tdoamat::ParseMatrix("{\"n\": 2"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] { (void)tdoamat::ParseMatrix(R"({"n": 2, "entries": [0, 1, -1]})"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { (void)tdoamat::ParseMatrix(R"({"n": 2, "entries": [0, "a", 0, 0]})"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { (void)tdoamat::ParseMatrix("tdoa_matrix,n=2\n0,x\n0,0\n"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { (void)tdoamat::ParseMatrix("tdoa_matrix,n=2\n0,1\n"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { (void)tdoamat::ParseMatrix("tdoa_matrix,n=2\n0,1,2\n-1,0\n"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { (void)tdoamat::ReadFile("/nonexistent/tdoamat.json"); }) ==
        ErrorCode::kIo);
}

TEST_CASE("mask and outlier formats") {
  const tdoamat::Mask mask = tdoamat::Mask::FromMissingPairs(4, {{3, 1}, {0, 2}});
  const std::string json = tdoamat::MaskToJson(mask);
  CHECK(json == "{\"n\":4,\"missing_pairs\":[[0,2],[1,3]]}\n");
  CHECK(tdoamat::ParseMaskJson(json).matrix() == mask.matrix());
  CHECK_THROWS_AS((void)tdoamat::ParseMaskJson(R"({"n":3,"missing_pairs":[[0,5]]})"),
                  tdoamat::Error);

  TdoaMatrix s(3);
  s.Set(0, 2, 0.01);
  const tdoamat::OutlierMatrix outliers(s, false);
  const std::string text = tdoamat::OutliersToJson(outliers);
  CHECK(text == "{\"n\":3,\"triplets\":[[0,2,0.01],[2,0,-0.01]]}\n");
  CHECK(tdoamat::ParseOutliersJson(text).entries() == s.entries());
}

TEST_CASE("number formatting") {
  CHECK(tdoamat::FormatNumber(0.1) == "0.1");
  CHECK(tdoamat::FormatNumber(1e-6) == "1e-06");
  CHECK(tdoamat::FormatNumber(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(tdoamat::FormatNumber(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(tdoamat::FormatNumber(std::nan("")) == "nan");
}

TEST_CASE("trial bundle") {
  tdoamat::CorruptionSpec spec;
  spec.outlier_count = 1;
  spec.seed = 4;
  const tdoamat::Trial t =
      tdoamat::SimulateTrial(tdoamat::RandomScene(5, 1.0, 2.0, 4), spec);
  const std::string json = tdoamat::TrialToJson(t);
  for (const char* key : {"\"seed\"", "\"scene\"", "\"truth\"", "\"corrupted\"", "\"mask\"",
                          "\"injected_outliers\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
}
