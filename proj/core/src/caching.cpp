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

#include "mmw/caching.hpp"

#include <algorithm>
#include <cmath>

#include "mmw/common.hpp"

namespace mmw {

void CacheState::Validate() const {
  if (!(segment_size_bits > 0.0)) throw DomainError("segment size must be positive");
  if (!(play_rate > 0.0)) throw DomainError("play rate must be positive");
  if (capacity < 0.0) throw DomainError("capacity must be nonnegative");
  if (segments < 0.0 || segments > capacity) {
    throw DomainError("segment count outside [0, capacity]");
  }
}

std::int64_t CacheState::Count() const {
  return static_cast<std::int64_t>(std::floor(segments + 1e-9));
}

double CacheState::PlaybackSeconds() const {
  return static_cast<double>(Count()) / play_rate;
}

void EnergyModel::Validate() const {
  if (!(energy_per_scan > 0.0 && frame_duration > 0.0 && scan_interval > 0.0)) {
    throw DomainError("energy model entries must be positive");
  }
}

CacheState CacheFill(double avg_rate, double duration, CacheState state) {
  if (avg_rate < 0.0 || duration < 0.0) {
    throw DomainError("rate and duration must be nonnegative");
  }
  const double burst =
      std::min(std::floor(avg_rate * duration / state.segment_size_bits),
               state.capacity);
  state.segments = std::min(state.segments + burst, state.capacity);
  return state;
}

DrainResult CacheDrain(CacheState state, double seconds) {
  if (seconds < 0.0) throw DomainError("drain time must be nonnegative");
  DrainResult out;
  const double wanted = seconds * state.play_rate;
  const double played = std::min(wanted, state.segments);
  state.segments -= played;
  out.stall_seconds = (wanted - played) / state.play_rate;
  out.state = state;
  return out;
}

double CoastDistance(const CacheState& state, double speed) {
  if (!(speed > 0.0)) throw DomainError("speed must be positive");
  return state.PlaybackSeconds() * speed;
}

std::int64_t SkippedSbsCount(double expected_coast, double intercell_distance) {
  if (!(intercell_distance > 0.0)) {
    throw DomainError("inter-cell distance must be positive");
  }
  return static_cast<std::int64_t>(
      std::floor(std::max(expected_coast, 0.0) / intercell_distance));
}

double ScanEnergy(const EnergyModel& model) {
  model.Validate();
  return model.energy_per_scan * model.frame_duration / model.scan_interval;
}

double NextScanInterval(const CacheState& state, double ttt,
                        double default_scan_interval) {
  if (ttt < 0.0) throw DomainError("time-to-trigger must be nonnegative");
  return std::max(state.PlaybackSeconds() - ttt, default_scan_interval);
}

}  // namespace mmw
