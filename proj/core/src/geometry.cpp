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

#include "mmw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmw/quadrature.hpp"

namespace mmw {
namespace {

constexpr double kAcosClamp = 1e-12;
// Sectors may tile the circle; allows 2π/N typed with ~5 significant digits.
constexpr double kFullCircleTolerance = 1e-4;

// arccos with arguments pulled back into [-1, 1] when they overshoot by at
// most kAcosClamp; larger overshoots are real domain errors.
double SafeAcos(double x) {
  if (x > 1.0) {
    if (x > 1.0 + kAcosClamp) throw DomainError("arccos argument > 1");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - kAcosClamp) throw DomainError("arccos argument < -1");
    x = -1.0;
  }
  return std::acos(x);
}

// F(r_c <= distance) for an entry-edge mobile, in distance form.
double TraverseCdf(double r_min, double r_sbs, double beamwidth,
                   double distance) {
  if (distance < r_min) return 0.0;
  if (distance <= 0.0) return 1.0;  // r_min == 0: the far edge is reached at once
  const double near = SafeAcos(r_min / distance);
  const double toward_sbs = std::min(SafeAcos(r_min / r_sbs), near);
  return std::clamp((near + toward_sbs) / (kPi - beamwidth), 0.0, 1.0);
}

}  // namespace

void RequireOnEntryEdge(const Pose& pose, const BeamGeometry& beam) {
  const Vec2 p = pose.position - beam.sbs_position;
  const Vec2 edge = Vec2::FromPolar(1.0, beam.EntryEdgeAngle());
  const double r = p.Norm();
  if (r <= 0.0) throw DomainError("pose coincides with the SBS");
  if (std::abs(Cross(edge, p)) > 1e-9 * std::max(1.0, r) || Dot(edge, p) <= 0.0) {
    throw DomainError("pose is not on the entry edge of the beam");
  }
}

Pose MakePose(Vec2 position, double heading, double speed) {
  if (speed < 0.0) throw DomainError("speed must be nonnegative");
  return Pose{position, NormalizeAngle(heading), speed};
}

void BeamGeometry::Validate() const {
  if (n_beams < 1) throw DomainError("n_beams must be positive");
  if (!(beamwidth > 0.0)) throw DomainError("beamwidth must be positive");
  if (n_beams * beamwidth > kTwoPi * (1.0 + kFullCircleTolerance)) {
    throw DomainError("n_beams * beamwidth exceeds 2*pi");
  }
}

bool BeamGeometry::InAnySector(Vec2 p) const {
  const double azimuth = (p - sbs_position).Angle();
  for (int j = 0; j < n_beams; ++j) {
    const double entry = SectorFarEdge(j) - beamwidth;
    if (NormalizeAngle(azimuth - entry) <= beamwidth) return true;
  }
  return false;
}

double BeamCoverageProbability(int n_beams, double beamwidth) {
  if (n_beams < 2) throw DomainError("coverage probability needs n_beams >= 2");
  if (!(beamwidth > 0.0)) throw DomainError("beamwidth must be positive");
  const double covered = n_beams * beamwidth / kTwoPi;
  if (covered > 1.0 + kFullCircleTolerance) {
    throw DomainError("n_beams * beamwidth exceeds 2*pi");
  }
  const double on_arc = std::min(covered, 1.0);
  const double inscribed =
      0.5 * (1.0 - 1.0 / n_beams) + beamwidth / (2.0 * kTwoPi);
  return std::clamp(on_arc + (1.0 - on_arc) * inscribed, 0.0, 1.0);
}

double MinExitDistance(const Pose& pose, const BeamGeometry& beam) {
  const Vec2 p = pose.position - beam.sbs_position;
  const double t0 = beam.FarEdgeAngle();
  return std::abs(-p.x * std::sin(t0) + p.y * std::cos(t0));
}

double BeamTraverseDistance(const Pose& pose, const BeamGeometry& beam) {
  const Vec2 p = pose.position - beam.sbs_position;
  const double t0 = beam.FarEdgeAngle();
  const double signed_offset = -p.x * std::sin(t0) + p.y * std::cos(t0);
  const double closing = std::sin(pose.heading - t0);
  if (std::abs(closing) < 1e-12) {
    throw NoIntersectionError("heading is parallel to the far beam edge");
  }
  const double r = -signed_offset / closing;
  if (r < -1e-12 * std::max(1.0, p.Norm())) {
    throw NoIntersectionError("far beam edge lies behind the mobile");
  }
  return std::max(r, 0.0);
}

Pose EntryEdgePose(const BeamGeometry& beam, double distance, double heading,
                   double speed) {
  if (!(distance > 0.0)) throw DomainError("distance must be positive");
  return MakePose(
      beam.sbs_position + Vec2::FromPolar(distance, beam.EntryEdgeAngle()),
      heading, speed);
}

std::pair<double, double> AdmissibleHeadingRange(const BeamGeometry& beam) {
  const double t0 = beam.FarEdgeAngle();
  return {t0, t0 + kPi - beam.beamwidth};
}

double CachingDurationCdf(const Pose& pose, const BeamGeometry& beam,
                          double t0) {
  if (t0 < 0.0) throw DomainError("t0 must be nonnegative");
  RequireOnEntryEdge(pose, beam);
  const double r_min = MinExitDistance(pose, beam);
  const double r_sbs = (pose.position - beam.sbs_position).Norm();
  return TraverseCdf(r_min, r_sbs, beam.beamwidth, pose.speed * t0);
}

double ExpectedCacheTraverseDistance(const Pose& pose, const BeamGeometry& beam,
                                     double max_distance) {
  if (!(max_distance > 0.0)) throw DomainError("max_distance must be positive");
  RequireOnEntryEdge(pose, beam);
  const double r_min = MinExitDistance(pose, beam);
  const double r_sbs = (pose.position - beam.sbs_position).Norm();
  if (max_distance <= r_min) return max_distance;

  auto survival = [&](double r) {
    return 1.0 - TraverseCdf(r_min, r_sbs, beam.beamwidth, r);
  };
  const AdaptiveSimpson quad(1e-9 * max_distance);
  double total = r_min;
  const double knee = std::clamp(r_sbs, r_min, max_distance);
  total += quad.Integrate(survival, r_min, knee).value;
  total += quad.Integrate(survival, knee, max_distance).value;
  return total;
}

HofEvaluation EvaluateHofProbability(double speed, double t_mts,
                                     double cell_radius) {
  if (speed < 0.0) throw DomainError("speed must be nonnegative");
  if (!(t_mts > 0.0)) throw DomainError("t_mts must be positive");
  if (!(cell_radius > 0.0)) throw DomainError("cell radius must be positive");
  const double x = speed * t_mts / (2.0 * cell_radius);
  if (x > 1.0) return {1.0, true};
  return {2.0 / kPi * std::asin(x), false};
}

double ChordLengthPdf(const CellDisk& cell, double d) {
  const double a = cell.radius;
  if (!(a > 0.0)) throw DomainError("cell radius must be positive");
  if (d < 0.0 || d >= 2.0 * a) {
    throw DomainError("chord length outside [0, 2a)");
  }
  return 2.0 / (kPi * std::sqrt(4.0 * a * a - d * d));
}

double ChordLengthFromEntryAngle(const CellDisk& cell, double entry_angle) {
  return 2.0 * cell.radius * std::sin(entry_angle);
}

std::optional<std::pair<double, double>> RayDiskInterval(Vec2 origin, Vec2 dir,
                                                         const CellDisk& disk) {
  const Vec2 oc = origin - disk.center;
  const double b = Dot(dir, oc);
  const double c = Dot(oc, oc) - disk.radius * disk.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double t_out = -b + root;
  if (t_out <= 0.0) return std::nullopt;
  return std::make_pair(-b - root, t_out);
}

}  // namespace mmw
