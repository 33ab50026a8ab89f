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

#include "tdoamat/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "tdoamat/error.hpp"

namespace tdoamat {

using Eigen::Index;
using Eigen::MatrixXd;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void ParseFail(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

ordered_json ParseJson(std::string_view text, const char* what) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    ParseFail(std::string(what) + ": " + e.what());
  }
}

Index ReadSize(const ordered_json& doc, const char* what) {
  if (!doc.is_object() || !doc.contains("n") ||
      !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    ParseFail(std::string(what) + ": missing or invalid \"n\"");
  }
  return static_cast<Index>(doc["n"].get<long long>());
}

Index ReadIndex(const ordered_json& v, Index n, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<long long>() >= n) {
    ParseFail(std::string(what) + ": index out of range");
  }
  return static_cast<Index>(v.get<long long>());
}

TdoaMatrix Finish(const MatrixXd& raw, const ParseOptions& options) {
  return options.symmetrize ? TdoaMatrix::SkewPart(raw)
                            : TdoaMatrix::FromEntries(raw, options.tolerance);
}

ordered_json MatrixObject(const TdoaMatrix& m) {
  ordered_json doc;
  doc["n"] = m.size();
  doc["unit"] = "seconds";
  ordered_json entries = ordered_json::array();
  for (Index i = 0; i < m.size(); ++i) {
    for (Index j = 0; j < m.size(); ++j) entries.push_back(m(i, j));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

ordered_json MaskObject(const Mask& mask) {
  ordered_json doc;
  doc["n"] = mask.size();
  ordered_json pairs = ordered_json::array();
  for (const IndexPair& p : mask.MissingPairs()) {
    pairs.push_back({p.row, p.col});
  }
  doc["missing_pairs"] = std::move(pairs);
  return doc;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseDouble(std::string_view field, Index row, Index col) {
  field = Trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    ParseFail("CSV matrix: bad number '" + std::string(field) + "' at row " +
              std::to_string(row) + ", column " + std::to_string(col));
  }
  return value;
}

}  // namespace

TdoaMatrix ParseMatrixJson(std::string_view text, const ParseOptions& options) {
  const ordered_json doc = ParseJson(text, "matrix JSON");
  const Index n = ReadSize(doc, "matrix JSON");
  if (doc.contains("unit") &&
      (!doc["unit"].is_string() || doc["unit"].get<std::string>() != "seconds")) {
    ParseFail("matrix JSON: unit must be \"seconds\"");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array() ||
      doc["entries"].size() != static_cast<std::size_t>(n * n)) {
    ParseFail("matrix JSON: \"entries\" must be an array of n*n numbers");
  }
  MatrixXd raw(n, n);
  const ordered_json& entries = doc["entries"];
  for (Index k = 0; k < n * n; ++k) {
    const ordered_json& v = entries[static_cast<std::size_t>(k)];
    if (!v.is_number()) ParseFail("matrix JSON: non-numeric entry");
    raw(k / n, k % n) = v.get<double>();
  }
  return Finish(raw, options);
}

TdoaMatrix ParseMatrixCsv(std::string_view text, const ParseOptions& options) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = Trim(text.substr(0, end));
    if (!line.empty()) lines.push_back(line);
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  constexpr std::string_view kHeader = "tdoa_matrix,n=";
  if (lines.empty() || lines[0].substr(0, kHeader.size()) != kHeader) {
    ParseFail("CSV matrix: expected header 'tdoa_matrix,n=<n>'");
  }
  const std::string_view size_field = lines[0].substr(kHeader.size());
  long long n = 0;
  const auto [ptr, ec] = std::from_chars(
      size_field.data(), size_field.data() + size_field.size(), n);
  if (ec != std::errc() || ptr != size_field.data() + size_field.size() || n < 1) {
    ParseFail("CSV matrix: invalid n in header");
  }
  if (lines.size() != static_cast<std::size_t>(n) + 1) {
    ParseFail("CSV matrix: expected " + std::to_string(n) + " rows, found " +
              std::to_string(lines.size() - 1));
  }
  MatrixXd raw(n, n);
  for (Index i = 0; i < n; ++i) {
    std::string_view row = lines[static_cast<std::size_t>(i) + 1];
    Index j = 0;
    while (true) {
      const std::size_t comma = row.find(',');
      if (j >= n) ParseFail("CSV matrix: too many columns in row " + std::to_string(i));
      raw(i, j) = ParseDouble(row.substr(0, comma), i, j);
      ++j;
      if (comma == std::string_view::npos) break;
      row.remove_prefix(comma + 1);
    }
    if (j != n) ParseFail("CSV matrix: too few columns in row " + std::to_string(i));
  }
  return Finish(raw, options);
}

TdoaMatrix ParseMatrix(std::string_view text, const ParseOptions& options) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return ParseMatrixJson(text, options);
  }
  return ParseMatrixCsv(text, options);
}

std::string MatrixToJson(const TdoaMatrix& m) {
  return MatrixObject(m).dump() + "\n";
}

std::string MatrixToCsv(const TdoaMatrix& m) {
  std::string out = "tdoa_matrix,n=" + std::to_string(m.size()) + "\n";
  for (Index i = 0; i < m.size(); ++i) {
    for (Index j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += FormatNumber(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string FormatMatrix(const TdoaMatrix& m, MatrixFormat format) {
  return format == MatrixFormat::kCsv ? MatrixToCsv(m) : MatrixToJson(m);
}

Mask ParseMaskJson(std::string_view text) {
  const ordered_json doc = ParseJson(text, "mask JSON");
  const Index n = ReadSize(doc, "mask JSON");
  if (!doc.contains("missing_pairs") || !doc["missing_pairs"].is_array()) {
    ParseFail("mask JSON: \"missing_pairs\" must be an array");
  }
  std::vector<IndexPair> missing;
  for (const ordered_json& pair : doc["missing_pairs"]) {
    if (!pair.is_array() || pair.size() != 2) {
      ParseFail("mask JSON: each missing pair must be [i, j]");
    }
    missing.push_back({ReadIndex(pair[0], n, "mask JSON"),
                       ReadIndex(pair[1], n, "mask JSON")});
  }
  return Mask::FromMissingPairs(n, missing);
}

std::string MaskToJson(const Mask& mask) { return MaskObject(mask).dump() + "\n"; }

OutlierMatrix ParseOutliersJson(std::string_view text) {
  const ordered_json doc = ParseJson(text, "outlier JSON");
  const Index n = ReadSize(doc, "outlier JSON");
  if (!doc.contains("triplets") || !doc["triplets"].is_array()) {
    ParseFail("outlier JSON: \"triplets\" must be an array");
  }
  MatrixXd raw = MatrixXd::Zero(n, n);
  for (const ordered_json& t : doc["triplets"]) {
    if (!t.is_array() || t.size() != 3 || !t[2].is_number()) {
      ParseFail("outlier JSON: each triplet must be [i, j, value]");
    }
    raw(ReadIndex(t[0], n, "outlier JSON"), ReadIndex(t[1], n, "outlier JSON")) =
        t[2].get<double>();
  }
  return OutlierMatrix(TdoaMatrix::FromEntries(raw), false);
}

std::string OutliersToJson(const OutlierMatrix& s) {
  ordered_json doc;
  doc["n"] = s.size();
  ordered_json triplets = ordered_json::array();
  for (Index i = 0; i < s.size(); ++i) {
    for (Index j = 0; j < s.size(); ++j) {
      if (s.entries()(i, j) != 0.0) {
        triplets.push_back({i, j, s.entries()(i, j)});
      }
    }
  }
  doc["triplets"] = std::move(triplets);
  return doc.dump() + "\n";
}

std::string TrialToJson(const Trial& trial) {
  ordered_json doc;
  doc["seed"] = trial.seed;
  if (trial.scene) {
    ordered_json scene;
    scene["speed"] = trial.scene->speed;
    ordered_json sensors = ordered_json::array();
    for (const Eigen::Vector3d& s : trial.scene->sensors) {
      sensors.push_back({s.x(), s.y(), s.z()});
    }
    scene["sensors"] = std::move(sensors);
    scene["source"] = {trial.scene->source.x(), trial.scene->source.y(),
                       trial.scene->source.z()};
    doc["scene"] = std::move(scene);
  } else {
    doc["scene"] = nullptr;
  }
  doc["truth"] = MatrixObject(trial.truth);
  doc["corrupted"] = MatrixObject(trial.corrupted);
  doc["mask"] = MaskObject(trial.mask);
  ordered_json injected = ordered_json::array();
  for (const IndexPair& p : trial.injected_outliers) {
    injected.push_back({p.row, p.col});
  }
  doc["injected_outliers"] = std::move(injected);
  return doc.dump(2) + "\n";
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

TdoaMatrix LoadMatrix(const std::string& path, const ParseOptions& options) {
  return ParseMatrix(ReadFile(path), options);
}

void SaveMatrix(const TdoaMatrix& m, const std::string& path, MatrixFormat format) {
  WriteFile(path, FormatMatrix(m, format));
}

Mask LoadMask(const std::string& path) { return ParseMaskJson(ReadFile(path)); }

}  // namespace tdoamat
