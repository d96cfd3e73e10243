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

#ifndef MMW_EXPERIMENTS_HPP_
#define MMW_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmw/handover.hpp"
#include "mmw/matching.hpp"
#include "mmw/scenario.hpp"

namespace mmw {

struct ExperimentResult {
  std::string name;
  std::vector<std::string> columns;  // names carry units
  std::vector<std::vector<double>> rows;
  int replications = 0;
  std::uint64_t seed = 0;
  double runtime_s = 0.0;  // excluded from the CSV

  // Value at (row, column name); throws std::out_of_range.
  double At(std::size_t row, const std::string& column) const;
  void WriteCsv(std::ostream& os) const;
};

const std::vector<std::string>& ExperimentNames();

struct RunOptions {
  int threads = 1;
  int replications = 0;  // 0 = the config value
};

// Throws std::invalid_argument for an unknown name.
ExperimentResult RunExperiment(const std::string& name,
                               const ScenarioConfig& config,
                               const RunOptions& options = {});

// ---- single-user trajectory ------------------------------------------------

struct TrajectoryStats {
  int cells_entered = 0;
  int handover_attempts = 0;  // engaged cells
  int hofs = 0;                  // realized: ToS below t_MTS
  double expected_hofs = 0.0;    // sum of the chord-model HOF probability
  int scans = 0;
  double cached_segments = 0.0;  // total filled over mmW
  double stall_seconds = 0.0;
};

// Drives one HandoverMachine along a straight line for `duration` seconds.
// RSS follows the sub-6 GHz slope and reaches the threshold exactly at each
// simplified cell edge. With caching on, the cache fills at the mmW LoS rate
// while the MUE is attached to an SBS and inside one of its beams, and drains
// at the play rate while coasting.
TrajectoryStats SimulateTrajectory(const Scenario& s, const ScenarioConfig& cfg,
                                   const MueSite& mue, bool caching,
                                   double duration, double dt,
                                   std::vector<HandoverEvent>* events = nullptr);

// ---- multi-user focal cell ------------------------------------------------

// U MUEs enter the focal SBS (the one nearest the area centre) through
// uniformly random boundary points on inward chords. The second candidate is
// the next cell on the ray; T_s(u) is the travel time to reach it.
struct FocalInstance {
  Scenario scenario;
  int focal = 0;
  GameInstance game;            // SBS indices follow the scenario
  std::vector<double> reach_s;  // T_s(u)
};

FocalInstance BuildFocalInstance(const ScenarioConfig& cfg, int n_mues,
                                 double speed, std::uint64_t seed);

struct FocalOutcome {
  double load = 0.0;              // period-1 MUEs at the focal SBS
  double hof_conventional = 0.0;  // mean per-MUE HOF probability
  double hof_proposed = 0.0;
  double cache_users = 0.0;       // MUEs served from the cache in period 1
  double proposals_focal = 0.0;
  double proposals_total = 0.0;
};

FocalOutcome EvaluateFocal(const FocalInstance& inst);

}  // namespace mmw

#endif  // MMW_EXPERIMENTS_HPP_
