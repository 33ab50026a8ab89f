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

// Seedable random streams with a portable output sequence.
//
// std::mt19937_64 and std::seed_seq are fully specified by the standard, but
// the std:: distributions are not, so uniform, normal and index draws are
// implemented here on top of the raw engine output. Every stream is keyed by
// (base seed, stream kind, two indices), which lets each corruption axis be
// varied without disturbing the others.

#ifndef TDOAMAT_RNG_HPP_
#define TDOAMAT_RNG_HPP_

#include <cstdint>
#include <random>

namespace tdoamat {

enum class Stream : std::uint32_t {
  kScene = 1,
  kNoise = 2,
  kOutliers = 3,
  kMask = 4,
};

class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint64_t a = 0,
      std::uint64_t b = 0);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Standard normal, Box-Muller (two uniforms per draw, no caching).
  double Normal();
  double Normal(double mean, double sigma) { return mean + sigma * Normal(); }

  // Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t Index(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tdoamat

#endif  // TDOAMAT_RNG_HPP_
