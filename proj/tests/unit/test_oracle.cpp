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


#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mmw/common.hpp"
#include "mmw/geometry.hpp"
#include "mmw/matching.hpp"
#include "mmw/oracle.hpp"
#include "mmw/rng.hpp"

using namespace mmw;

namespace {
constexpr double kDeg = kPi / 180.0;
}  // namespace

TEST_CASE("coverage sampling agrees with the closed form") {
  for (auto [n, th] : {std::pair{3, 10 * kDeg}, std::pair{4, kPi / 6}, std::pair{6, 0.2}}) {
    const McEstimate e = McCoverageProbability(n, th, 400000, 5, 2);
    CHECK(std::abs(e.mean - BeamCoverageProbability(n, th)) < 4 * e.std_error + 1e-4);
  }
}

TEST_CASE("sampling is independent of the thread count") {
  const McEstimate a = McCoverageProbability(3, 0.3, 200000, 9, 1);
  const McEstimate b = McCoverageProbability(3, 0.3, 200000, 9, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.samples == 200000);
  const McEstimate h1 = McHofFrequency(8.0, 1.0, 30.0, 150000, 4, 1);
  const McEstimate h2 = McHofFrequency(8.0, 1.0, 30.0, 150000, 4, 4);
  CHECK(h1.mean == h2.mean);
}

TEST_CASE("hof frequency agrees with the closed form") {
  for (double v : {2.0, 8.0, 16.0}) {
    const McEstimate e = McHofFrequency(v, 1.0, 30.0, 400000, 17);
    CHECK(std::abs(e.mean - HofProbability(v, 1.0, 30.0)) < 4 * e.std_error + 1e-4);
  }
}

TEST_CASE("caching durations follow the cdf") {
  const BeamGeometry beam{{0, 0}, 3, 10 * kDeg, 10 * kDeg};
  const Pose pose = EntryEdgePose(beam, 20.0, 1.0, 16.0);
  const auto t = McCachingDurations(pose, beam, 100000, 3, 2);
  CHECK(std::is_sorted(t.begin(), t.end()));
  const double ks =
      KsDistance(t, [&](double x) { return CachingDurationCdf(pose, beam, x); });
  // 1.63 / sqrt(n) is the 1% critical value.
  CHECK(ks < 1.63 / std::sqrt(1e5));
  // A shifted cdf is rejected.
  const double shifted =
      KsDistance(t, [&](double x) { return CachingDurationCdf(pose, beam, 0.9 * x); });
  CHECK(shifted > 0.02);
}

TEST_CASE("ks distance of a perfect sample") {
  std::vector<double> u;
  for (int i = 0; i < 100; ++i) u.push_back((i + 0.5) / 100.0);
  CHECK(KsDistance(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) ==
        doctest::Approx(0.005));
}

TEST_CASE("bruteforce offload on a tiny instance") {
  IlpInstance inst;
  inst.sbss = {{30.0, 1}};
  // Both MUEs tolerate the cell; only one fits; the third has enough cache.
  inst.mues = {{4.0, 0.0, 0.2, 1.0, {}}, {4.0, 0.0, 0.2, 1.0, {}}, {4.0, 5000.0, 0.0, 2.0, {}}};
  const IlpSolution s = SolveOffloadBruteforce(inst);
  CHECK(s.mbs_count == 1);
  CHECK(s.choice == std::vector<int>{0, 1, 2});
  CHECK(CheckOffloadConstraints(inst, s.choice).ok());
  CHECK_FALSE(CheckOffloadConstraints(inst, {0, 0, 2}).quota);
  CHECK_FALSE(CheckOffloadConstraints(inst, {1, 1, 0}).hof);
  CHECK_FALSE(CheckOffloadConstraints(inst, {2, 1, 2}).cache);
}

TEST_CASE("bruteforce budget") {
  IlpInstance inst;
  inst.sbss.assign(4, IlpSbs{});
  inst.mues.assign(12, IlpMue{});
  inst.budget = 1000;
  CHECK_THROWS_AS(SolveOffloadBruteforce(inst), std::length_error);
}

TEST_CASE("optimum is invariant to mue order") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomGameOptions o;
    o.max_mues = 6;
    o.max_sbs = 3;
    const IlpInstance inst = IlpInstance::FromGame(RandomGameInstance(seed, o));
    IlpInstance rev = inst;
    std::reverse(rev.mues.begin(), rev.mues.end());
    CHECK(SolveOffloadBruteforce(inst).mbs_count == SolveOffloadBruteforce(rev).mbs_count);
  }
}

TEST_CASE("matching is feasible and never beats the optimum") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomGameOptions o;
    o.max_mues = 6;
    o.max_sbs = 3;
    const GameInstance g = RandomGameInstance(seed, o);
    const IlpInstance inst = IlpInstance::FromGame(g);
    const std::vector<int> a = AssignmentFromMatching(g, DynamicMatch(g));
    INFO("seed " << seed);
    CHECK(CheckOffloadConstraints(inst, a).ok());
    const int k = static_cast<int>(g.sbss.size());
    const int mbs = static_cast<int>(std::count(a.begin(), a.end(), k));
    CHECK(mbs >= SolveOffloadBruteforce(inst).mbs_count);
  }
}

TEST_CASE("random instances are reproducible") {
  const GameInstance a = RandomGameInstance(77);
  const GameInstance b = RandomGameInstance(77);
  REQUIRE(a.mues.size() == b.mues.size());
  for (std::size_t u = 0; u < a.mues.size(); ++u) {
    CHECK(a.mues[u].speed == b.mues[u].speed);
    CHECK(a.mues[u].first_candidates == b.mues[u].first_candidates);
  }
}
