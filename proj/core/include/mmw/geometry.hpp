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

#ifndef MMW_GEOMETRY_HPP_
#define MMW_GEOMETRY_HPP_

#include <optional>
#include <utility>

#include "mmw/common.hpp"

namespace mmw {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  double Norm() const { return std::hypot(x, y); }
  double Angle() const { return std::atan2(y, x); }
  static Vec2 FromPolar(double r, double angle) {
    return {r * std::cos(angle), r * std::sin(angle)};
  }
};

inline double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Position, heading and speed of a mobile moving on a straight line.
struct Pose {
  Vec2 position;
  double heading = 0.0;  // radians, kept in [0, 2*pi)
  double speed = 0.0;    // m/s

  Vec2 Direction() const { return Vec2::FromPolar(1.0, heading); }
  Vec2 At(double distance) const { return position + distance * Direction(); }
};

Pose MakePose(Vec2 position, double heading, double speed);

// Fixed, equidistant mmW sectors of one SBS. Sector j spans azimuths
// [far_edge - beamwidth, far_edge] with far_edge = anchor_angle + j*2*pi/N;
// sector 0 is the beam whose far edge is `anchor_angle`.
struct BeamGeometry {
  Vec2 sbs_position;
  int n_beams = 1;
  double beamwidth = 0.0;
  double anchor_angle = 0.0;

  void Validate() const;
  double FarEdgeAngle() const { return anchor_angle; }
  double EntryEdgeAngle() const { return anchor_angle - beamwidth; }
  double SectorFarEdge(int j) const {
    return anchor_angle + j * kTwoPi / n_beams;
  }
  // True if `p` falls inside any of the N sectors (azimuth test only).
  bool InAnySector(Vec2 p) const;
};

struct CellDisk {
  Vec2 center;
  double radius = 1.0;

  bool Contains(Vec2 p) const { return (p - center).Norm() <= radius; }
};

struct ChordSample {
  double length = 0.0;       // meters
  double entry_angle = 0.0;  // heading relative to the tangent at entry
};

// Probability that a mobile entering the cell crosses mmW coverage, for N
// equidistant beams of width `beamwidth`:
//   P = Nθ/2π + (1 - Nθ/2π) * (½(1 - 1/N) + θ/4π).
double BeamCoverageProbability(int n_beams, double beamwidth);

// Perpendicular distance from the pose to the line carrying the far beam edge.
// Written in line form (-sinθ0)·x + cosθ0·y = 0, so θ0 = ±π/2 needs no special
// case; equals |x tanθ0 - y| / sqrt(1 + tan²θ0) elsewhere.
double MinExitDistance(const Pose& pose, const BeamGeometry& beam);

// Distance travelled along the heading until the far beam edge line is met,
// (y - x tanθ0) / (tanθ0 cosθu - sinθu) in SBS-centred coordinates.
// Throws NoIntersectionError for parallel headings or intersections behind the
// mobile.
double BeamTraverseDistance(const Pose& pose, const BeamGeometry& beam);

// Pose on the entry edge of sector 0 at `distance` from the SBS.
Pose EntryEdgePose(const BeamGeometry& beam, double distance, double heading,
                   double speed);

// Throws DomainError unless the pose sits on the entry edge of sector 0.
void RequireOnEntryEdge(const Pose& pose, const BeamGeometry& beam);

// Headings for which an entry-edge mobile moves across sector 0 towards the
// far edge: the open interval (θ0, θ0 + π - θk), length π - θk.
std::pair<double, double> AdmissibleHeadingRange(const BeamGeometry& beam);

// CDF of the caching duration for a mobile on the entry edge whose heading is
// uniform over the admissible range. The pose heading is ignored. Throws
// DomainError for t0 < 0 or a pose that is not on the entry edge.
double CachingDurationCdf(const Pose& pose, const BeamGeometry& beam,
                          double t0);

// E[min(r_c, max_distance)] = ∫_0^max_distance (1 - F(r / v)) dr.
// The untruncated traverse distance has an infinite mean (headings close to
// parallel with the far edge), so a cap is required; callers normally pass the
// beam range or the cell diameter.
double ExpectedCacheTraverseDistance(const Pose& pose, const BeamGeometry& beam,
                                     double max_distance);

struct HofEvaluation {
  double probability = 0.0;
  bool clamped = false;  // v * t_mts exceeded the cell diameter
};

// (2/π) arcsin(v t_MTS / 2a). Outside the domain the probability saturates
// at 1 and `clamped` is set.
HofEvaluation EvaluateHofProbability(double speed, double t_mts,
                                     double cell_radius);
inline double HofProbability(double speed, double t_mts, double cell_radius) {
  return EvaluateHofProbability(speed, t_mts, cell_radius).probability;
}

// Density of a random chord with one fixed endpoint: 2 / (π sqrt(4a² - d²)).
double ChordLengthPdf(const CellDisk& cell, double d);

// Chord length for a straight line entering the disk with heading at angle
// `entry_angle` ∈ [0, π] from the tangent: 2a·sin(entry_angle).
double ChordLengthFromEntryAngle(const CellDisk& cell, double entry_angle);

// Parameter interval [t_in, t_out] (t_out >= max(t_in, 0)) over which the ray
// origin + t*dir (|dir| = 1) is inside the disk, if the ray meets it ahead.
std::optional<std::pair<double, double>> RayDiskInterval(Vec2 origin, Vec2 dir,
                                                         const CellDisk& disk);

}  // namespace mmw

#endif  // MMW_GEOMETRY_HPP_
