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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("tdoamat_cli_" + std::to_string(std::rand()) + "_" +
           std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string Path(const std::string& name) const { return (dir / name).string(); }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name), std::ios::binary) << text;
  }
  std::string Read(const std::string& name) const {
    std::ifstream in(Path(name), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  // Runs the CLI with stdout and stderr captured to files; returns its exit code.
  int Run(const std::string& args) const {
    const std::string cmd = std::string("\"") + TDOAMAT_CLI_PATH + "\" " + args + " > \"" +
                            Path("stdout.txt") + "\" 2> \"" + Path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

constexpr const char* kCanonical =
    "{\"n\":3,\"unit\":\"seconds\",\"entries\":[0.0,-0.001,-0.002,0.001,0.0,-0.001,0.002,"
    "0.001,0.0]}\n";

}  // namespace

TEST_CASE("validate round trips canonical JSON byte for byte") {
  Workspace ws;
  ws.Write("m.json", kCanonical);
  CHECK(ws.Run("validate --in " + ws.Path("m.json") + " --out " + ws.Path("o.json")) == 0);
  CHECK(ws.Read("o.json") == kCanonical);
  CHECK(ws.Run("validate --in " + ws.Path("m.json")) == 0);
  CHECK(ws.Read("stdout.txt") == kCanonical);
}

TEST_CASE("validate converts CSV to JSON") {
  Workspace ws;
  ws.Write("m.csv", "tdoa_matrix,n=3\n0,-0.001,-0.002\n0.001,0,-0.001\n0.002,0.001,0\n");
  CHECK(ws.Run("validate --in " + ws.Path("m.csv") + " --format json") == 0);
  CHECK(ws.Read("stdout.txt") == kCanonical);
  ws.Write("m.json", kCanonical);
  CHECK(ws.Run("--format csv validate --in " + ws.Path("m.json")) == 0);
  CHECK(ws.Read("stdout.txt") ==
        "tdoa_matrix,n=3\n0,-0.001,-0.002\n0.001,0,-0.001\n0.002,0.001,0\n");
}

TEST_CASE("asymmetric input is rejected with exit code 2") {
  Workspace ws;
  ws.Write("bad.csv", "tdoa_matrix,n=3\n0,1,2\n-1,0,3\n-2,-3.001,0\n");
  CHECK(ws.Run("validate --in " + ws.Path("bad.csv")) == 2);
  CHECK(ws.Read("stderr.txt").find("(1, 2)") != std::string::npos);
  CHECK(ws.Run("validate --symmetrize --in " + ws.Path("bad.csv")) == 0);
  CHECK(ws.Run("validate --in " + ws.Path("missing.json")) == 2);
  CHECK(ws.Run("frobnicate") == 2);
}

TEST_CASE("matrix subcommands") {
  Workspace ws;
  ws.Write("m.json", kCanonical);
  ws.Write("mask.json", "{\"n\":3,\"missing_pairs\":[[0,2]]}");
  CHECK(ws.Run("denoise --in " + ws.Path("m.json")) == 0);
  CHECK(ws.Run("denoise --method element --in " + ws.Path("m.json")) == 0);
  CHECK(ws.Run("complete --in " + ws.Path("m.json") + " --mask " + ws.Path("mask.json")) == 0);
  CHECK(ws.Run("robust-denoise --k 1 --in " + ws.Path("m.json") + " --outliers-out " +
               ws.Path("s.json")) == 0);
  CHECK(ws.Read("s.json").rfind("{\"n\":3,\"triplets\":", 0) == 0);
  CHECK(ws.Run("robust-denoise --k 2 --fixed-budget --no-refit --in " + ws.Path("m.json")) == 0);
  CHECK(ws.Run("robust-complete --k 0 --in " + ws.Path("m.json") + " --mask " +
               ws.Path("mask.json")) == 0);

  ws.Write("cut.json", "{\"n\":3,\"missing_pairs\":[[0,1],[0,2]]}");
  CHECK(ws.Run("complete --in " + ws.Path("m.json") + " --mask " + ws.Path("cut.json")) == 3);
  CHECK(ws.Run("complete --pseudo --in " + ws.Path("m.json") + " --mask " +
               ws.Path("cut.json")) == 0);
}

TEST_CASE("strict mode reports non-convergence") {
  Workspace ws;
  ws.Write("m.json",
           "{\"n\":4,\"unit\":\"seconds\",\"entries\":[0,0.3,-0.2,0.5,-0.3,0,0.7,-0.1,0.2,"
           "-0.7,0,0.4,-0.5,0.1,-0.4,0]}");
  const std::string base = "robust-denoise --k 1 --max-iter 1 --stop level --in " + ws.Path("m.json");
  CHECK(ws.Run(base) == 0);
  CHECK(ws.Run(base + " --strict") == 4);
}

TEST_CASE("simulate and sweep") {
  Workspace ws;
  CHECK(ws.Run("--seed 5 simulate --n 6 --outliers 1 --missing 0.2 --out " +
               ws.Path("trial.json")) == 0);
  CHECK(ws.Read("trial.json").find("\"injected_outliers\"") != std::string::npos);

  ws.Write("cfg.json", R"({"n": 6, "runs": 2, "noise_sigmas": [1e-6], "outlier_counts": [0, 1]})");
  CHECK(ws.Run("sweep --config " + ws.Path("cfg.json") + " --out-dir " + ws.Path("")) == 0);
  CHECK(ws.Read("snr_db.csv").rfind("pipeline,k,", 0) == 0);
  CHECK(ws.Read("loc_error_mm.csv").rfind("pipeline,k,", 0) == 0);
  CHECK(ws.Run("--format json sweep --config " + ws.Path("cfg.json") + " --out-dir " +
               ws.Path("")) == 0);
  CHECK(ws.Read("sweep.json").find("\"rows\"") != std::string::npos);
  ws.Write("bad.json", R"({"n": "ten"})");
  CHECK(ws.Run("sweep --config " + ws.Path("bad.json") + " --out-dir " + ws.Path("")) == 2);
}
