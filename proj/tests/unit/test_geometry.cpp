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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "mmw/common.hpp"
#include "mmw/geometry.hpp"
#include "mmw/quadrature.hpp"
#include "mmw/rng.hpp"

using namespace mmw;

namespace {
constexpr double kDeg = kPi / 180.0;

// Sector 0 with its entry edge along +x and far edge at theta.
BeamGeometry XAxisBeam(double theta, int n = 3) {
  return BeamGeometry{{0.0, 0.0}, n, theta, theta};
}
}  // namespace

TEST_CASE("coverage probability anchors") {
  // Three 120-degree sectors tile the circle.
  CHECK(BeamCoverageProbability(3, kTwoPi / 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  // 11/18 by hand: 1/3 + (2/3)(3/8 + 1/24).
  CHECK(BeamCoverageProbability(4, kPi / 6.0) == doctest::Approx(11.0 / 18.0).epsilon(1e-14));
  CHECK(BeamCoverageProbability(2, 1e-9) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(BeamCoverageProbability(3, 10 * kDeg) ==
        doctest::Approx(0.40162037037037037).epsilon(1e-14));
}

TEST_CASE("coverage probability domain") {
  CHECK_THROWS_AS(BeamCoverageProbability(1, 0.1), DomainError);
  CHECK_THROWS_AS(BeamCoverageProbability(3, 0.0), DomainError);
  CHECK_THROWS_AS(BeamCoverageProbability(3, 2.2), DomainError);
  // Rounded 2*pi/3 is accepted and saturates at one.
  CHECK(BeamCoverageProbability(3, 2.0944) == 1.0);
}

TEST_CASE("coverage probability is increasing in beamwidth") {
  for (int n = 2; n <= 8; ++n) {
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double p = BeamCoverageProbability(n, kTwoPi / n * i / 50.0);
      CHECK(p >= prev);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("exit distance agrees with the slope form") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const double t0 = rng.Uniform(-1.4, 1.4);  // keeps tan finite
    const BeamGeometry beam{{rng.Uniform(-5, 5), rng.Uniform(-5, 5)}, 3, 0.1, t0};
    const Vec2 p{rng.Uniform(-50, 50), rng.Uniform(-50, 50)};
    const Pose pose = MakePose(p, rng.Uniform(0, kTwoPi), 5.0);
    const Vec2 q = p - beam.sbs_position;
    const double tn = std::tan(t0);
    const double slope_form = std::abs(q.x * tn - q.y) / std::sqrt(1 + tn * tn);
    CHECK(MinExitDistance(pose, beam) == doctest::Approx(slope_form).epsilon(1e-10));
    try {
      const double r = BeamTraverseDistance(pose, beam);
      const double ref = (q.y - q.x * tn) / (tn * std::cos(pose.heading) - std::sin(pose.heading));
      CHECK(r == doctest::Approx(ref).epsilon(1e-8));
      CHECK(r >= MinExitDistance(pose, beam) - 1e-9);
    } catch (const NoIntersectionError&) {
      const double ref = (q.y - q.x * tn) / (tn * std::cos(pose.heading) - std::sin(pose.heading));
      CHECK(ref < 1e-9);
    }
  }
}

TEST_CASE("vertical far edge needs no special case") {
  const BeamGeometry beam{{0, 0}, 3, 0.1, kPi / 2};
  const Pose pose = MakePose({7.0, 3.0}, kPi, 1.0);
  CHECK(MinExitDistance(pose, beam) == doctest::Approx(7.0));
  CHECK(BeamTraverseDistance(pose, beam) == doctest::Approx(7.0));
}

TEST_CASE("parallel and receding headings have no exit") {
  const BeamGeometry beam = XAxisBeam(10 * kDeg);
  const Pose on = EntryEdgePose(beam, 20.0, 10 * kDeg, 1.0);
  CHECK_THROWS_AS(BeamTraverseDistance(on, beam), NoIntersectionError);
  const Pose away = EntryEdgePose(beam, 20.0, -kPi / 2, 1.0);
  CHECK_THROWS_AS(BeamTraverseDistance(away, beam), NoIntersectionError);
}

TEST_CASE("caching duration CDF frozen values") {
  const BeamGeometry beam = XAxisBeam(10 * kDeg);
  const Pose pose = EntryEdgePose(beam, 20.0, 1.0, 16.0);
  // Headings uniform on (0, pi - theta_k): see tests/oracles/derive_values.py.
  CHECK(CachingDurationCdf(pose, beam, 0.2) == 0.0);
  CHECK(CachingDurationCdf(pose, beam, 0.5) ==
        doctest::Approx(0.756125416781557364).epsilon(1e-12));
  CHECK(CachingDurationCdf(pose, beam, 1.0) ==
        doctest::Approx(0.911336186668783246).epsilon(1e-12));
}

TEST_CASE("caching duration CDF against heading enumeration") {
  const double th = 10 * kDeg;
  const BeamGeometry beam = XAxisBeam(th);
  for (double r : {10.0, 20.0, 40.0}) {
    const Pose pose = EntryEdgePose(beam, r, 1.0, 12.0);
    const auto [lo, hi] = AdmissibleHeadingRange(beam);
    constexpr int kGrid = 200000;
    std::vector<double> t;
    for (int i = 0; i < kGrid; ++i) {
      const double h = lo + (hi - lo) * (i + 0.5) / kGrid;
      t.push_back(BeamTraverseDistance(MakePose(pose.position, h, 12.0), beam) / 12.0);
    }
    for (double t0 : {0.05, 0.2, 0.5, 1.0, 3.0}) {
      int below = 0;
      for (double x : t) below += x <= t0;
      CHECK(CachingDurationCdf(pose, beam, t0) ==
            doctest::Approx(static_cast<double>(below) / kGrid).epsilon(2e-5));
    }
  }
}

TEST_CASE("caching duration CDF shape") {
  const BeamGeometry beam = XAxisBeam(10 * kDeg);
  const Pose pose = EntryEdgePose(beam, 20.0, 1.0, 16.0);
  const double floor_t = MinExitDistance(pose, beam) / pose.speed;
  CHECK(CachingDurationCdf(pose, beam, 0.0) == 0.0);
  CHECK(CachingDurationCdf(pose, beam, floor_t * 0.999) == 0.0);
  CHECK(CachingDurationCdf(pose, beam, 1e9) == doctest::Approx(1.0).epsilon(1e-9));
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double f = CachingDurationCdf(pose, beam, 0.005 * i);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK_THROWS_AS(CachingDurationCdf(pose, beam, -1.0), DomainError);
  const Pose off = MakePose({20.0, 3.0}, 1.0, 16.0);
  CHECK_THROWS_AS(CachingDurationCdf(off, beam, 1.0), DomainError);
}

TEST_CASE("expected capped traverse distance") {
  const BeamGeometry beam = XAxisBeam(10 * kDeg);
  const Pose pose = EntryEdgePose(beam, 20.0, 1.0, 10.0);
  const auto [lo, hi] = AdmissibleHeadingRange(beam);
  for (double cap : {5.0, 30.0, 200.0}) {
    double sum = 0.0;
    constexpr int kGrid = 200000;
    for (int i = 0; i < kGrid; ++i) {
      const double h = lo + (hi - lo) * (i + 0.5) / kGrid;
      sum += std::min(cap, BeamTraverseDistance(MakePose(pose.position, h, 10.0), beam));
    }
    CHECK(ExpectedCacheTraverseDistance(pose, beam, cap) ==
          doctest::Approx(sum / kGrid).epsilon(1e-4));
  }
}

TEST_CASE("HOF probability") {
  CHECK(HofProbability(8, 1, 30) == doctest::Approx(0.0851361740085118277).epsilon(1e-13));
  CHECK(HofProbability(16, 1, 30) == doctest::Approx(0.1718445550380061107).epsilon(1e-13));
  CHECK(HofProbability(0, 1, 30) == 0.0);
  CHECK(HofProbability(60, 1, 30) == doctest::Approx(1.0));
  const HofEvaluation e = EvaluateHofProbability(61, 1, 30);
  CHECK(e.clamped);
  CHECK(e.probability == 1.0);
  CHECK_THROWS_AS(HofProbability(-1, 1, 30), DomainError);
  CHECK_THROWS_AS(HofProbability(1, 0, 30), DomainError);
  CHECK_THROWS_AS(HofProbability(1, 1, 0), DomainError);
  // Monotone in speed, decreasing in radius.
  for (int v = 1; v < 40; ++v) {
    CHECK(HofProbability(v + 1, 1, 30) > HofProbability(v, 1, 30));
    CHECK(HofProbability(v, 1, 31) < HofProbability(v, 1, 30));
  }
}

TEST_CASE("chord length density integrates to the HOF probability") {
  const CellDisk cell{{0, 0}, 30.0};
  const AdaptiveSimpson quad(1e-10);
  for (double x : {4.0, 8.0, 16.0, 40.0}) {
    const double mass = quad.Integrate([&](double d) { return ChordLengthPdf(cell, d); }, 0.0, x).value;
    CHECK(mass == doctest::Approx(HofProbability(x, 1.0, 30.0)).epsilon(1e-7));
  }
  CHECK(ChordLengthFromEntryAngle(cell, kPi / 2) == doctest::Approx(60.0));
  CHECK_THROWS_AS(ChordLengthPdf(cell, 60.0), DomainError);
}

TEST_CASE("ray disk interval") {
  const CellDisk disk{{10, 0}, 2};
  auto iv = RayDiskInterval({0, 0}, {1, 0}, disk);
  REQUIRE(iv);
  CHECK(iv->first == doctest::Approx(8));
  CHECK(iv->second == doctest::Approx(12));
  CHECK_FALSE(RayDiskInterval({0, 0}, {-1, 0}, disk));
  CHECK_FALSE(RayDiskInterval({0, 5}, {1, 0}, disk));
  iv = RayDiskInterval({10, 0}, {0, 1}, disk);
  REQUIRE(iv);
  CHECK(iv->first == doctest::Approx(-2));
  CHECK(iv->second == doctest::Approx(2));
}

TEST_CASE("sector membership") {
  const BeamGeometry beam{{0, 0}, 3, 10 * kDeg, 10 * kDeg};
  CHECK(beam.InAnySector(Vec2::FromPolar(5, 5 * kDeg)));
  CHECK(beam.InAnySector(Vec2::FromPolar(5, 125 * kDeg)));
  CHECK_FALSE(beam.InAnySector(Vec2::FromPolar(5, 60 * kDeg)));
}
