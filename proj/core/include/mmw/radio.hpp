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

#ifndef MMW_RADIO_HPP_
#define MMW_RADIO_HPP_

#include <optional>

#include "mmw/geometry.hpp"
#include "mmw/quadrature.hpp"

namespace mmw {

struct ChannelParams {
  double carrier_frequency = 73e9;  // Hz
  double wavelength = kSpeedOfLight / 73e9;
  double reference_distance = 1.0;  // m
  double pathloss_exponent = 2.0;
  double shadowing_std_db = 0.0;
  bool los = true;

  static ChannelParams Make(double carrier_hz, double exponent,
                            double shadowing_std_db, bool los);
  static ChannelParams MmwLos() { return Make(73e9, 2.0, 0.0, true); }
  static ChannelParams MmwNlos() { return Make(73e9, 3.5, 0.0, false); }
  // Sub-6 GHz link used only for RSS and cell-edge decisions.
  static ChannelParams Microwave() { return Make(2e9, 3.0, 8.0, false); }

  void Validate() const;
  // (λ / 4π r0)² r0^α
  double Beta() const;
};

struct AntennaPattern {
  double main_lobe_gain_db = 18.0;
  double side_lobe_gain_db = -2.0;
  double main_beamwidth = 10.0 * kPi / 180.0;

  void Validate() const;
};

struct LinkBudget {
  double tx_power = 1.0;        // W
  double combined_gain = 1.0;   // linear, G_max² for aligned beams
  double bandwidth = 5e9;       // Hz
  double noise_psd = 0.0;       // W/Hz
  double beta = 1.0;            // linear

  static LinkBudget Make(double tx_power_dbm, const AntennaPattern& pattern,
                         double bandwidth_hz, double noise_psd_dbm_hz,
                         const ChannelParams& params);
  void Validate() const;
  double Snr(double distance, double exponent) const;
};

// 20 log10(4π r0/λ) + 10 α log10(r/r0) + χ.
double PathLossDb(double distance, const ChannelParams& params,
                  std::optional<double> shadowing_db = std::nullopt);

// G_max inside the main lobe (strict), G_min elsewhere.
double AntennaGainDb(double azimuth, const AntennaPattern& pattern);

// w log2(1 + β P ψ r^-α / (w N0)) in bit/s.
double InstantaneousRate(double distance, const LinkBudget& budget,
                         const ChannelParams& params);

// Crossing of sector 0 from its entry edge, described by the entry distance
// r, the angle θ̂ = θu - θ0 + θk between the path and the entry edge and the
// beamwidth. Valid for θk < θ̂ < π.
struct BeamCrossing {
  double entry_distance = 0.0;
  double theta_hat = 0.0;
  double beamwidth = 0.0;
  double coverage_probability = 1.0;

  static BeamCrossing FromPose(const Pose& pose, const BeamGeometry& beam);
  double TraverseDistance() const;
};

// Average caching rate P_c · (1/r_c) ∫ w log2(1 + SNR) dr along the path
// from the entry edge to the far edge. With r = r_x sinθ̂ / sin(θ̂ - θ):
//   R̄ = P_c (w r_x sinθ̂ / r_c) ∫_0^θk log2(1 + δ1 sin^α(θ̂-θ)) / sin²(θ̂-θ) dθ.
// Closed form for α = 2, adaptive quadrature otherwise.
double AverageCachingRate(const Pose& pose, const BeamGeometry& beam,
                          const LinkBudget& budget,
                          const ChannelParams& params);
double AverageCachingRate(const BeamCrossing& crossing,
                          const LinkBudget& budget,
                          const ChannelParams& params);

// Quadrature of the same path integral, used as the oracle of the closed form.
QuadratureResult QuadratureRate(const BeamCrossing& crossing,
                                const LinkBudget& budget,
                                const ChannelParams& params, double tolerance);

// Variant obtained by substituting f = sin(θ̂ - θ) into an integrand that
// carries an extra cos(θ̂ - θ) factor:
//   δ2 ∫_{f(θk)}^{f(0)} log2(1 + δ1 f^α) / f² df.
// For α = 2 the antiderivative is
//   G(f) = 2√δ1 atan(√δ1 f) - ln(1 + δ1 f²) / f,
// evaluated as G(f(0)) - G(f(θk)). Kept for comparison with the exact path
// average; it is not a path average (see SubstitutedFormQuadrature).
double SubstitutedFormRate(const BeamCrossing& crossing,
                           const LinkBudget& budget,
                           const ChannelParams& params);
QuadratureResult SubstitutedFormQuadrature(const BeamCrossing& crossing,
                                           const LinkBudget& budget,
                                           const ChannelParams& params,
                                           double tolerance);

// Mean of w log2(1 + SNR) over the straight segment [a, b], with distances
// below the reference distance clamped to it. No coverage factor.
double SegmentAverageRate(Vec2 a, Vec2 b, Vec2 sbs, const LinkBudget& budget,
                          const ChannelParams& params);

}  // namespace mmw

#endif  // MMW_RADIO_HPP_
