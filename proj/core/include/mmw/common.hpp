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

#ifndef MMW_COMMON_HPP_
#define MMW_COMMON_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mmw {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Raised when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A straight-line trajectory never meets the requested beam edge ahead of the
// mobile (parallel heading or intersection behind it).
class NoIntersectionError : public std::runtime_error {
 public:
  explicit NoIntersectionError(const std::string& what)
      : std::runtime_error(what) {}
};

inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }
inline double LinearToDb(double lin) { return 10.0 * std::log10(lin); }
inline double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Wraps an angle into [0, 2*pi).
inline double NormalizeAngle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace mmw

#endif  // MMW_COMMON_HPP_
