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

#include "mmw/radio.hpp"

#include <algorithm>
#include <cmath>

namespace mmw {
namespace {

// Prefactor P_c w r_x sinθ̂ / r_c shared by both integral forms.
double PathPrefactor(const BeamCrossing& c, const LinkBudget& budget) {
  return c.coverage_probability * budget.bandwidth * c.entry_distance *
         std::sin(c.theta_hat) / c.TraverseDistance();
}

// δ1: SNR at distance r_x sinθ̂.
double Delta1(const BeamCrossing& c, const LinkBudget& budget, double alpha) {
  return budget.beta * budget.tx_power * budget.combined_gain /
         (budget.bandwidth * budget.noise_psd) *
         std::pow(c.entry_distance * std::sin(c.theta_hat), -alpha);
}

// Antiderivative of ln(1 + δ sin²x) / sin²x on (0, π).
double ExactAntiderivative(double x, double delta) {
  const double s = std::sin(x);
  const double k = std::sqrt(1.0 + delta);
  return -std::cos(x) / s * std::log1p(delta * s * s) +
         2.0 * (k * std::atan2(k * s, std::cos(x)) - x);
}

double SubstitutedAntiderivative(double f, double delta) {
  const double rd = std::sqrt(delta);
  return 2.0 * rd * std::atan(rd * f) - std::log1p(delta * f * f) / f;
}

}  // namespace

ChannelParams ChannelParams::Make(double carrier_hz, double exponent,
                                  double shadowing_std_db, bool los) {
  ChannelParams p;
  p.carrier_frequency = carrier_hz;
  p.wavelength = kSpeedOfLight / carrier_hz;
  p.pathloss_exponent = exponent;
  p.shadowing_std_db = shadowing_std_db;
  p.los = los;
  p.Validate();
  return p;
}

void ChannelParams::Validate() const {
  if (!(carrier_frequency > 0.0)) throw DomainError("carrier frequency must be positive");
  if (!(pathloss_exponent > 0.0)) throw DomainError("path loss exponent must be positive");
  if (!(reference_distance > 0.0)) throw DomainError("reference distance must be positive");
  if (shadowing_std_db < 0.0) throw DomainError("shadowing std must be nonnegative");
  const double expected = kSpeedOfLight / carrier_frequency;
  if (std::abs(wavelength - expected) > 1e-6 * expected) {
    throw DomainError("wavelength inconsistent with carrier frequency");
  }
}

double ChannelParams::Beta() const {
  const double fs = wavelength / (4.0 * kPi * reference_distance);
  return fs * fs * std::pow(reference_distance, pathloss_exponent);
}

void AntennaPattern::Validate() const {
  if (!(main_lobe_gain_db > side_lobe_gain_db)) {
    throw DomainError("main lobe gain must exceed side lobe gain");
  }
  if (!(main_beamwidth > 0.0)) throw DomainError("main beamwidth must be positive");
}

LinkBudget LinkBudget::Make(double tx_power_dbm, const AntennaPattern& pattern,
                            double bandwidth_hz, double noise_psd_dbm_hz,
                            const ChannelParams& params) {
  LinkBudget b;
  b.tx_power = DbmToWatts(tx_power_dbm);
  b.combined_gain = DbToLinear(2.0 * pattern.main_lobe_gain_db);
  b.bandwidth = bandwidth_hz;
  b.noise_psd = DbmToWatts(noise_psd_dbm_hz);
  b.beta = params.Beta();
  b.Validate();
  return b;
}

void LinkBudget::Validate() const {
  if (!(tx_power > 0.0 && combined_gain > 0.0 && bandwidth > 0.0 &&
        noise_psd > 0.0 && beta > 0.0)) {
    throw DomainError("link budget entries must be positive");
  }
}

double LinkBudget::Snr(double distance, double exponent) const {
  return beta * tx_power * combined_gain * std::pow(distance, -exponent) /
         (bandwidth * noise_psd);
}

double PathLossDb(double distance, const ChannelParams& params,
                  std::optional<double> shadowing_db) {
  if (distance < params.reference_distance) {
    throw DomainError("distance below the path loss reference distance");
  }
  const double r0 = params.reference_distance;
  return 20.0 * std::log10(4.0 * kPi * r0 / params.wavelength) +
         10.0 * params.pathloss_exponent * std::log10(distance / r0) +
         shadowing_db.value_or(0.0);
}

double AntennaGainDb(double azimuth, const AntennaPattern& pattern) {
  return std::abs(azimuth) < pattern.main_beamwidth ? pattern.main_lobe_gain_db
                                                    : pattern.side_lobe_gain_db;
}

double InstantaneousRate(double distance, const LinkBudget& budget,
                         const ChannelParams& params) {
  if (distance < params.reference_distance) {
    throw DomainError("distance below the path loss reference distance");
  }
  return budget.bandwidth *
         std::log2(1.0 + budget.Snr(distance, params.pathloss_exponent));
}

BeamCrossing BeamCrossing::FromPose(const Pose& pose, const BeamGeometry& beam) {
  beam.Validate();
  RequireOnEntryEdge(pose, beam);
  BeamCrossing c;
  c.entry_distance = (pose.position - beam.sbs_position).Norm();
  c.theta_hat = NormalizeAngle(pose.heading - beam.FarEdgeAngle() + beam.beamwidth);
  c.beamwidth = beam.beamwidth;
  c.coverage_probability = BeamCoverageProbability(beam.n_beams, beam.beamwidth);
  if (!(c.theta_hat > c.beamwidth && c.theta_hat < kPi)) {
    throw NoIntersectionError("heading does not cross the beam to its far edge");
  }
  return c;
}

double BeamCrossing::TraverseDistance() const {
  return entry_distance * std::sin(beamwidth) / std::sin(theta_hat - beamwidth);
}

double AverageCachingRate(const Pose& pose, const BeamGeometry& beam,
                          const LinkBudget& budget,
                          const ChannelParams& params) {
  return AverageCachingRate(BeamCrossing::FromPose(pose, beam), budget, params);
}

double AverageCachingRate(const BeamCrossing& crossing,
                          const LinkBudget& budget,
                          const ChannelParams& params) {
  const double alpha = params.pathloss_exponent;
  if (alpha != 2.0) {
    const double tol = 1e-9 * crossing.coverage_probability * budget.bandwidth;
    return QuadratureRate(crossing, budget, params, tol).value;
  }
  const double delta = Delta1(crossing, budget, alpha);
  const double hi = crossing.theta_hat;
  const double lo = crossing.theta_hat - crossing.beamwidth;
  const double integral =
      ExactAntiderivative(hi, delta) - ExactAntiderivative(lo, delta);
  return PathPrefactor(crossing, budget) * integral / std::numbers::ln2;
}

QuadratureResult QuadratureRate(const BeamCrossing& crossing,
                                const LinkBudget& budget,
                                const ChannelParams& params, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  const double alpha = params.pathloss_exponent;
  const double delta = Delta1(crossing, budget, alpha);
  const double scale = PathPrefactor(crossing, budget);
  auto integrand = [&](double theta) {
    const double s = std::sin(crossing.theta_hat - theta);
    return std::log2(1.0 + delta * std::pow(s, alpha)) / (s * s);
  };
  QuadratureResult q = AdaptiveSimpson(tolerance / scale)
                           .Integrate(integrand, 0.0, crossing.beamwidth);
  q.value *= scale;
  q.error_estimate *= scale;
  return q;
}

double SubstitutedFormRate(const BeamCrossing& crossing,
                           const LinkBudget& budget,
                           const ChannelParams& params) {
  if (params.pathloss_exponent != 2.0) {
    throw DomainError("the substituted closed form requires alpha = 2");
  }
  const double delta = Delta1(crossing, budget, 2.0);
  const double f0 = std::sin(crossing.theta_hat);
  const double fk = std::sin(crossing.theta_hat - crossing.beamwidth);
  return PathPrefactor(crossing, budget) *
         (SubstitutedAntiderivative(f0, delta) -
          SubstitutedAntiderivative(fk, delta)) /
         std::numbers::ln2;
}

QuadratureResult SubstitutedFormQuadrature(const BeamCrossing& crossing,
                                           const LinkBudget& budget,
                                           const ChannelParams& params,
                                           double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  const double alpha = params.pathloss_exponent;
  const double delta = Delta1(crossing, budget, alpha);
  const double scale = PathPrefactor(crossing, budget);
  auto integrand = [&](double f) {
    return std::log2(1.0 + delta * std::pow(f, alpha)) / (f * f);
  };
  const double f0 = std::sin(crossing.theta_hat);
  const double fk = std::sin(crossing.theta_hat - crossing.beamwidth);
  QuadratureResult q =
      AdaptiveSimpson(tolerance / scale).Integrate(integrand, fk, f0);
  q.value *= scale;
  q.error_estimate *= scale;
  return q;
}

double SegmentAverageRate(Vec2 a, Vec2 b, Vec2 sbs, const LinkBudget& budget,
                          const ChannelParams& params) {
  const double r0 = params.reference_distance;
  auto rate_at = [&](Vec2 p) {
    const double r = std::max((p - sbs).Norm(), r0);
    return budget.bandwidth *
           std::log2(1.0 + budget.Snr(r, params.pathloss_exponent));
  };
  const double length = (b - a).Norm();
  if (length <= 0.0) return rate_at(a);
  const Vec2 dir = (1.0 / length) * (b - a);
  auto integrand = [&](double s) { return rate_at(a + s * dir); };
  const double tol = 1e-9 * budget.bandwidth * length;
  return AdaptiveSimpson(tol).Integrate(integrand, 0.0, length).value / length;
}

}  // namespace mmw
