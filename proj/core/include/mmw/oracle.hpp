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

#ifndef MMW_ORACLE_HPP_
#define MMW_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mmw/geometry.hpp"
#include "mmw/matching.hpp"

namespace mmw {

struct IlpMue {
  double speed = 1.0;
  double cache_segments = 0.0;
  double p_th = 0.1;
  double scan_interval = 1.0;  // T_s(u)
  std::vector<int> reachable;   // SBSs on the route; empty means all
};

struct IlpSbs {
  double radius = 30.0;
  int quota = 1;
};

struct IlpInstance {
  std::vector<IlpMue> mues;
  std::vector<IlpSbs> sbss;
  double t_mts = 1.0;
  double play_rate = 1e3;
  std::uint64_t budget = 10'000'000;  // max enumerated assignments

  static IlpInstance FromGame(const GameInstance& g);
};

// Per MUE: SBS index in [0, K), K for the MBS, K + 1 for none (cache).
struct IlpSolution {
  std::vector<int> choice;
  int mbs_count = 0;
  std::uint64_t evaluated = 0;
};

struct IlpCheck {
  bool hof = true;     // HOF probability within P_th on every SBS link
  bool cache = true;   // unassigned MUEs are covered by their cache
  bool unique = true;  // one choice per MUE
  bool quota = true;
  bool ok() const { return hof && cache && unique && quota; }
};

// Exhaustive search over (K+2)^U assignments minimizing the MBS count; ties
// go to the lexicographically smallest choice vector. Throws
// std::length_error when the enumeration exceeds the budget.
IlpSolution SolveOffloadBruteforce(const IlpInstance& inst);
IlpCheck CheckOffloadConstraints(const IlpInstance& inst,
                                 const std::vector<int>& choice);
// Period-1 assignment realized by a dynamic matching, in ILP encoding.
std::vector<int> AssignmentFromMatching(const GameInstance& g,
                                        const DynamicMatching& m);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

// Sampling runs in fixed chunks with one stream per chunk, so results depend
// only on (inputs, seed), never on `threads`.

// Entry angle uniform on the cell circle; covered at once if it falls on a
// beam arc. Otherwise a heading uniform on [0, 2π) is drawn; outward headings
// miss, inward ones count when the chord leaves through an arc other than
// the entry gap.
McEstimate McCoverageProbability(int n_beams, double beamwidth,
                                 std::int64_t samples, std::uint64_t seed,
                                 int threads = 1);

// Sorted caching durations r_c / v for headings uniform over the admissible
// range of an entry-edge pose.
std::vector<double> McCachingDurations(const Pose& pose,
                                       const BeamGeometry& beam,
                                       std::int64_t samples, std::uint64_t seed,
                                       int threads = 1);

// sup |F_n - F| for sorted samples against a continuous CDF.
double KsDistance(const std::vector<double>& sorted,
                  const std::function<double(double)>& cdf);

// Fraction of straight crossings of a disk (entry point uniform on the
// circle, heading uniform over the inward half-plane) whose chord is shorter
// than v t_MTS.
McEstimate McHofFrequency(double speed, double t_mts, double radius,
                          std::int64_t samples, std::uint64_t seed,
                          int threads = 1);

struct RandomGameOptions {
  int max_mues = 8;
  int max_sbs = 4;
  int max_quota = 3;
  bool cross_plans = false;
};

// Fuzz instance: sizes, radii, quotas, speeds, caches, tolerances and
// candidate sets all drawn from `seed`.
GameInstance RandomGameInstance(std::uint64_t seed,
                                const RandomGameOptions& options = {});

struct BlockingReport {
  std::vector<Violation> period1;
  std::vector<Violation> period2;

  bool Stable() const { return period1.empty() && period2.empty(); }
  std::string Text() const;
};

BlockingReport ScanAllBlockings(const DynamicMatching& m, const GameInstance& g);

}  // namespace mmw

#endif  // MMW_ORACLE_HPP_
