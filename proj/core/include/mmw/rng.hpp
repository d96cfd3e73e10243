// Copyright 2026 The mmw-mobility Authors
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

#ifndef MMW_RNG_HPP_
#define MMW_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "mmw/common.hpp"

namespace mmw {

// Seeded stream used by every stochastic component. Uniform variates are built
// directly from the raw 64-bit engine output so streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix(seed)) {}

  // Independent stream for (seed, index), e.g. one per replication.
  static Rng ForStream(std::uint64_t seed, std::uint64_t index) {
    return Rng(Mix(seed ^ Mix(index + 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t Index(std::uint64_t n) {
    return static_cast<std::uint64_t>(Uniform() * static_cast<double>(n));
  }

  // Standard normal via Box-Muller.
  double Normal() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static std::uint64_t Mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace mmw

#endif  // MMW_RNG_HPP_
