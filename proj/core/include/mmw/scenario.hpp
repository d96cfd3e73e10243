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

#ifndef MMW_SCENARIO_HPP_
#define MMW_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmw/caching.hpp"
#include "mmw/config.hpp"
#include "mmw/geometry.hpp"
#include "mmw/handover.hpp"
#include "mmw/radio.hpp"

namespace mmw {

class PackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  // Deployment.
  double area_radius = 500.0;  // m
  int n_sbs = 50;
  double min_intercell = 30.0;  // m
  std::vector<double> sbs_powers_dbm{20.0, 27.0, 30.0};
  int max_placement_attempts = 200000;

  // Mobiles.
  int n_mues = 20;
  double speed_min = 1.0;   // m/s
  double speed_max = 16.0;  // m/s
  double frame = 60.0;      // T, s

  // mmW link.
  double carrier_hz = 73e9;
  double alpha_los = 2.0;
  double alpha_nlos = 3.5;
  double reference_distance = 1.0;  // m
  AntennaPattern antenna;
  int n_beams = 3;
  double bandwidth_hz = 5e9;
  double noise_dbm_hz = -174.0;

  // Sub-6 GHz link, used for cell edges and RSS.
  double uw_carrier_hz = 2e9;
  double uw_alpha = 3.0;
  double uw_shadowing_db = 8.0;

  // Caching and energy.
  double segment_bits = 1e6;
  double play_rate = 1e3;
  double cache_capacity = 1e4;
  EnergyModel energy;

  HandoverConfig handover;

  // Multi-user game.
  double cache_segments = 1e4;  // Ω_u
  int quota = 10;               // U_k^th
  double p_th = 0.05;           // P_u^th; calibrated, see README
  double epsilon = 0.05;

  std::uint64_t seed = 1;
  int replications = 200;

  void Validate() const;
  ChannelParams MmwParams(bool los) const;
  ChannelParams MicrowaveParams() const;
  LinkBudget MmwBudget(double tx_power_dbm, bool los) const;
  double Beamwidth() const { return antenna.main_beamwidth; }

  static ScenarioConfig FromConfig(const Config& config);
  static const std::vector<std::string>& Keys();
};

struct SbsSite {
  Vec2 position;
  double power_dbm = 20.0;
  double radius = 0.0;        // simplified circular cell edge, m
  double anchor_angle = 0.0;  // far edge of mmW sector 0, rad
};

struct MueSite {
  Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
};

struct Scenario {
  std::uint64_t seed = 0;
  double area_radius = 0.0;
  std::vector<SbsSite> sbss;
  std::vector<MueSite> mues;

  CellDisk Cell(int k) const { return {sbss[k].position, sbss[k].radius}; }
  BeamGeometry Beams(int k, int n_beams, double beamwidth) const;
  std::string ToJson() const;
};

// Distance at which the sub-6 GHz RSS (no shadowing, isotropic antennas)
// falls to `threshold_dbm`.
double ThresholdRadius(double power_dbm, const ChannelParams& uw,
                       double threshold_dbm);

// Uniform rejection placement with minimum spacing, powers drawn from the
// configured set, and cell radii min(threshold radius, power-weighted
// boundary to the nearest neighbour). Throws PackingError when the attempt
// budget runs out.
Scenario GenerateScenario(const ScenarioConfig& config, std::uint64_t seed);

struct CellHit {
  int sbs = -1;
  double t_in = 0.0;
  double t_out = 0.0;
};

// First cell (other than `exclude`) whose disk the ray enters at t > t_min.
std::optional<CellHit> NextCellOnRay(const Scenario& s, Vec2 origin, Vec2 dir,
                                     double t_min, int exclude = -1);

}  // namespace mmw

#endif  // MMW_SCENARIO_HPP_
