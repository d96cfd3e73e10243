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

#include "mmw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "mmw/rng.hpp"

namespace mmw {
namespace {

template <typename T>
void Positive(T v, const char* what) {
  if (!(v > T{0})) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

void ScenarioConfig::Validate() const {
  Positive(area_radius, "area_radius");
  if (n_sbs < 1) throw DomainError("n_sbs must be >= 1");
  if (min_intercell < 0.0) throw DomainError("min_intercell must be >= 0");
  if (sbs_powers_dbm.empty()) throw DomainError("sbs_powers_dbm is empty");
  Positive(max_placement_attempts, "max_placement_attempts");
  if (n_mues < 0) throw DomainError("n_mues must be >= 0");
  Positive(speed_min, "speed_min");
  if (speed_max < speed_min) throw DomainError("speed_max < speed_min");
  Positive(frame, "frame");
  Positive(carrier_hz, "carrier_hz");
  Positive(alpha_los, "alpha_los");
  Positive(alpha_nlos, "alpha_nlos");
  Positive(reference_distance, "reference_distance");
  antenna.Validate();
  BeamCoverageProbability(n_beams, antenna.main_beamwidth);
  Positive(bandwidth_hz, "bandwidth_hz");
  Positive(uw_carrier_hz, "uw_carrier_hz");
  Positive(uw_alpha, "uw_alpha");
  if (uw_shadowing_db < 0.0) throw DomainError("uw_shadowing_db must be >= 0");
  Positive(segment_bits, "segment_bits");
  Positive(play_rate, "play_rate");
  Positive(cache_capacity, "cache_capacity");
  energy.Validate();
  handover.Validate();
  if (cache_segments < 0.0) throw DomainError("cache_segments must be >= 0");
  Positive(quota, "quota");
  if (p_th < 0.0 || p_th > 1.0) throw DomainError("p_th must be in [0, 1]");
  if (epsilon < 0.0) throw DomainError("epsilon must be >= 0");
  Positive(replications, "replications");
}

ChannelParams ScenarioConfig::MmwParams(bool los) const {
  ChannelParams p =
      ChannelParams::Make(carrier_hz, los ? alpha_los : alpha_nlos, 0.0, los);
  p.reference_distance = reference_distance;
  return p;
}

ChannelParams ScenarioConfig::MicrowaveParams() const {
  ChannelParams p =
      ChannelParams::Make(uw_carrier_hz, uw_alpha, uw_shadowing_db, false);
  p.reference_distance = reference_distance;
  return p;
}

LinkBudget ScenarioConfig::MmwBudget(double tx_power_dbm, bool los) const {
  return LinkBudget::Make(tx_power_dbm, antenna, bandwidth_hz, noise_dbm_hz,
                          MmwParams(los));
}

const std::vector<std::string>& ScenarioConfig::Keys() {
  static const std::vector<std::string> keys = {
      "area_radius", "n_sbs", "min_intercell", "sbs_powers_dbm",
      "max_placement_attempts", "n_mues", "speed_min", "speed_max", "frame",
      "carrier_hz", "alpha_los", "alpha_nlos", "reference_distance",
      "gain_max_db", "gain_min_db", "beamwidth_deg", "n_beams", "bandwidth_hz",
      "noise_dbm_hz", "uw_carrier_hz", "uw_alpha", "uw_shadowing_db",
      "segment_bits", "play_rate", "cache_capacity", "energy_per_scan",
      "scan_interval", "ttt", "hysteresis_db", "execution_delay",
      "filter_window", "rss_threshold_dbm", "t_mts", "cache_segments", "quota",
      "p_th", "epsilon", "seed", "replications"};
  return keys;
}

ScenarioConfig ScenarioConfig::FromConfig(const Config& c) {
  c.RequireKnownKeys(Keys());
  ScenarioConfig s;
  s.area_radius = c.GetDouble("area_radius", s.area_radius);
  s.n_sbs = static_cast<int>(c.GetInt("n_sbs", s.n_sbs));
  s.min_intercell = c.GetDouble("min_intercell", s.min_intercell);
  s.sbs_powers_dbm = c.GetDoubleList("sbs_powers_dbm", s.sbs_powers_dbm);
  s.max_placement_attempts = static_cast<int>(
      c.GetInt("max_placement_attempts", s.max_placement_attempts));
  s.n_mues = static_cast<int>(c.GetInt("n_mues", s.n_mues));
  s.speed_min = c.GetDouble("speed_min", s.speed_min);
  s.speed_max = c.GetDouble("speed_max", s.speed_max);
  s.frame = c.GetDouble("frame", s.frame);
  s.carrier_hz = c.GetDouble("carrier_hz", s.carrier_hz);
  s.alpha_los = c.GetDouble("alpha_los", s.alpha_los);
  s.alpha_nlos = c.GetDouble("alpha_nlos", s.alpha_nlos);
  s.reference_distance = c.GetDouble("reference_distance", s.reference_distance);
  s.antenna.main_lobe_gain_db = c.GetDouble("gain_max_db", s.antenna.main_lobe_gain_db);
  s.antenna.side_lobe_gain_db = c.GetDouble("gain_min_db", s.antenna.side_lobe_gain_db);
  s.antenna.main_beamwidth =
      c.GetDouble("beamwidth_deg", s.antenna.main_beamwidth * 180.0 / kPi) *
      kPi / 180.0;
  s.n_beams = static_cast<int>(c.GetInt("n_beams", s.n_beams));
  s.bandwidth_hz = c.GetDouble("bandwidth_hz", s.bandwidth_hz);
  s.noise_dbm_hz = c.GetDouble("noise_dbm_hz", s.noise_dbm_hz);
  s.uw_carrier_hz = c.GetDouble("uw_carrier_hz", s.uw_carrier_hz);
  s.uw_alpha = c.GetDouble("uw_alpha", s.uw_alpha);
  s.uw_shadowing_db = c.GetDouble("uw_shadowing_db", s.uw_shadowing_db);
  s.segment_bits = c.GetDouble("segment_bits", s.segment_bits);
  s.play_rate = c.GetDouble("play_rate", s.play_rate);
  s.cache_capacity = c.GetDouble("cache_capacity", s.cache_capacity);
  s.energy.energy_per_scan = c.GetDouble("energy_per_scan", s.energy.energy_per_scan);
  s.energy.frame_duration = s.frame;
  s.energy.scan_interval = c.GetDouble("scan_interval", s.energy.scan_interval);
  s.handover.ttt = c.GetDouble("ttt", s.handover.ttt);
  s.handover.hysteresis_db = c.GetDouble("hysteresis_db", s.handover.hysteresis_db);
  s.handover.execution_delay =
      c.GetDouble("execution_delay", s.handover.execution_delay);
  s.handover.filter_window =
      static_cast<int>(c.GetInt("filter_window", s.handover.filter_window));
  s.handover.rss_threshold_dbm =
      c.GetDouble("rss_threshold_dbm", s.handover.rss_threshold_dbm);
  s.handover.t_mts = c.GetDouble("t_mts", s.handover.t_mts);
  s.handover.default_scan_interval = s.energy.scan_interval;
  s.cache_segments = c.GetDouble("cache_segments", s.cache_segments);
  s.quota = static_cast<int>(c.GetInt("quota", s.quota));
  s.p_th = c.GetDouble("p_th", s.p_th);
  s.epsilon = c.GetDouble("epsilon", s.epsilon);
  s.seed = static_cast<std::uint64_t>(c.GetInt("seed", static_cast<std::int64_t>(s.seed)));
  s.replications = static_cast<int>(c.GetInt("replications", s.replications));
  try {
    s.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(c.source(), 0, "", e.what());
  }
  return s;
}

BeamGeometry Scenario::Beams(int k, int n_beams, double beamwidth) const {
  return {sbss[k].position, n_beams, beamwidth, sbss[k].anchor_angle};
}

std::string Scenario::ToJson() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["area_radius_m"] = area_radius;
  auto& sbs = j["sbss"] = nlohmann::ordered_json::array();
  for (const auto& s : sbss) {
    sbs.push_back({{"x_m", s.position.x},
                   {"y_m", s.position.y},
                   {"power_dbm", s.power_dbm},
                   {"radius_m", s.radius},
                   {"anchor_rad", s.anchor_angle}});
  }
  auto& mue = j["mues"] = nlohmann::ordered_json::array();
  for (const auto& m : mues) {
    mue.push_back({{"x_m", m.position.x},
                   {"y_m", m.position.y},
                   {"heading_rad", m.heading},
                   {"speed_mps", m.speed}});
  }
  return j.dump(2) + "\n";
}

double ThresholdRadius(double power_dbm, const ChannelParams& uw,
                       double threshold_dbm) {
  const double pl0 = PathLossDb(uw.reference_distance, uw);
  const double margin = power_dbm - threshold_dbm - pl0;
  if (margin <= 0.0) return uw.reference_distance;
  return uw.reference_distance *
         std::pow(10.0, margin / (10.0 * uw.pathloss_exponent));
}

Scenario GenerateScenario(const ScenarioConfig& config, std::uint64_t seed) {
  config.Validate();
  Rng rng(seed);
  Scenario s;
  s.seed = seed;
  s.area_radius = config.area_radius;

  int attempts = 0;
  while (static_cast<int>(s.sbss.size()) < config.n_sbs) {
    if (++attempts > config.max_placement_attempts) {
      throw PackingError("placed " + std::to_string(s.sbss.size()) + " of " +
                         std::to_string(config.n_sbs) + " SBSs with spacing " +
                         std::to_string(config.min_intercell) + " m after " +
                         std::to_string(config.max_placement_attempts) +
                         " attempts");
    }
    // Uniform over the disk.
    const double r = config.area_radius * std::sqrt(rng.Uniform());
    const Vec2 p = Vec2::FromPolar(r, rng.Uniform(0.0, kTwoPi));
    const bool clear = std::all_of(s.sbss.begin(), s.sbss.end(), [&](const SbsSite& o) {
      return (o.position - p).Norm() >= config.min_intercell;
    });
    if (!clear) continue;
    SbsSite site;
    site.position = p;
    site.power_dbm = config.sbs_powers_dbm[rng.Index(config.sbs_powers_dbm.size())];
    site.anchor_angle = rng.Uniform(0.0, kTwoPi);
    s.sbss.push_back(site);
  }

  const ChannelParams uw = config.MicrowaveParams();
  const double thr = config.handover.rss_threshold_dbm;
  for (auto& site : s.sbss) {
    double radius = ThresholdRadius(site.power_dbm, uw, thr);
    for (const auto& other : s.sbss) {
      if (&other == &site) continue;
      // Equal-RSS point on the segment towards the neighbour.
      const double d = (other.position - site.position).Norm();
      const double q = std::pow(10.0, (site.power_dbm - other.power_dbm) /
                                          (10.0 * uw.pathloss_exponent));
      radius = std::min(radius, d * q / (1.0 + q));
    }
    site.radius = radius;
  }

  for (int u = 0; u < config.n_mues; ++u) {
    MueSite m;
    const double r = config.area_radius * std::sqrt(rng.Uniform());
    m.position = Vec2::FromPolar(r, rng.Uniform(0.0, kTwoPi));
    m.heading = rng.Uniform(0.0, kTwoPi);
    m.speed = rng.Uniform(config.speed_min, config.speed_max);
    s.mues.push_back(m);
  }
  return s;
}

std::optional<CellHit> NextCellOnRay(const Scenario& s, Vec2 origin, Vec2 dir,
                                     double t_min, int exclude) {
  std::optional<CellHit> best;
  for (int k = 0; k < static_cast<int>(s.sbss.size()); ++k) {
    if (k == exclude) continue;
    const auto iv = RayDiskInterval(origin, dir, s.Cell(k));
    if (!iv || iv->first <= t_min) continue;
    if (!best || iv->first < best->t_in) best = CellHit{k, iv->first, iv->second};
  }
  return best;
}

}  // namespace mmw
