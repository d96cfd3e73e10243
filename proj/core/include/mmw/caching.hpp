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

#ifndef MMW_CACHING_HPP_
#define MMW_CACHING_HPP_

#include <cstdint>

namespace mmw {

// Device cache. The level is kept continuous so playback drains smoothly;
// Count() is the number of whole segments available.
struct CacheState {
  double segments = 0.0;
  double segment_size_bits = 1e6;  // B
  double play_rate = 1e3;          // Q, segments/s
  double capacity = 1e4;           // Ω_max

  void Validate() const;
  std::int64_t Count() const;
  // Ω/Q in seconds, using whole segments.
  double PlaybackSeconds() const;
};

struct EnergyModel {
  double energy_per_scan = 3e-3;  // J
  double frame_duration = 60.0;   // s
  double scan_interval = 1.0;     // s

  void Validate() const;
};

// Adds min(floor(R t / B), Ω_max) segments, then clamps the total to Ω_max.
CacheState CacheFill(double avg_rate, double duration, CacheState state);

struct DrainResult {
  CacheState state;
  double stall_seconds = 0.0;  // playback time not covered by the cache
};

// Plays `seconds` of video from the cache at rate Q.
DrainResult CacheDrain(CacheState state, double seconds);

// (Ω/Q) v.
double CoastDistance(const CacheState& state, double speed);

// floor(E[d_c] / l).
std::int64_t SkippedSbsCount(double expected_coast, double intercell_distance);

// E^s T / T_s.
double ScanEnergy(const EnergyModel& model);

// Scan interval while coasting: max(Ω/Q - ΔT, default). Leaves ΔT seconds of
// playback to find a target before the cache runs dry.
double NextScanInterval(const CacheState& state, double ttt,
                        double default_scan_interval = 1.0);

}  // namespace mmw

#endif  // MMW_CACHING_HPP_
