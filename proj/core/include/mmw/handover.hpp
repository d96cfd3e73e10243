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

#ifndef MMW_HANDOVER_HPP_
#define MMW_HANDOVER_HPP_

#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmw/caching.hpp"

namespace mmw {

enum class Phase {
  kIdle,
  kScanning,
  kTttWait,
  kExecuting,
  kCoasting,
  kMbsAttached,
  kSbsAttached,
};

enum class EventType {
  kScan,
  kTttStart,
  kTttAbort,
  kTrigger,
  kHandoverComplete,
  kCellExit,
  kHof,
  kMbsFallback,
};

std::string PhaseName(Phase p);
std::string EventTypeName(EventType t);

struct HandoverConfig {
  double ttt = 0.16;               // ΔT, s
  double hysteresis_db = 3.0;
  double execution_delay = 0.15;   // s
  int filter_window = 4;           // moving-average samples
  double rss_threshold_dbm = -80.0;
  double t_mts = 1.0;              // s
  double default_scan_interval = 1.0;
  bool caching = false;            // mute scans from the cache level

  void Validate() const;
};

// Base station ids are 0..n_bs-1; id 0 is the MBS.
inline constexpr int kMbsId = 0;

struct Measurement {
  int bs = 0;
  double rss_dbm = 0.0;
};

struct HandoverEvent {
  double time = 0.0;
  int mue = 0;
  EventType type = EventType::kScan;
  int cell = -1;
  double tos = 0.0;
};

struct HofRecord {
  int mue = 0;
  int cell = 0;
  double tos = 0.0;
  bool failed = false;
};

// 1 iff tos < t_mts.
int HofIndicator(double tos, double t_mts);

struct HandoverState {
  Phase phase = Phase::kIdle;
  std::optional<int> serving;
  std::optional<int> candidate;
  double ttt_elapsed = 0.0;
  double exec_elapsed = 0.0;
  double tos_elapsed = 0.0;  // time in the serving or target cell
  double next_scan_time = 0.0;
  std::vector<std::deque<double>> rss_window;  // per BS, newest last
};

struct StepOutput {
  std::vector<HandoverEvent> events;
  std::vector<HofRecord> hofs;
};

// One MUE. Cell membership (raw RSS above threshold) is tracked every step;
// candidate evaluation happens only at scan instants. A cell entered while
// scanning is muted by the cache is skipped and produces no HofRecord.
class HandoverMachine {
 public:
  HandoverMachine(int mue, int n_bs, HandoverConfig config);

  // Advances by dt. `cache` (optional) drives scan muting when caching is on.
  StepOutput Step(const std::vector<Measurement>& measurements, double dt,
                  const CacheState* cache = nullptr);

  const HandoverState& state() const { return state_; }
  double time() const { return time_; }
  int scan_count() const { return scans_; }

 private:
  double Filtered(int bs) const;
  void Emit(StepOutput& out, EventType type, int cell, double tos = 0.0);
  void FallBackToMbs(StepOutput& out);
  void Scan(StepOutput& out, const CacheState* cache);

  int mue_;
  int n_bs_;
  HandoverConfig cfg_;
  HandoverState state_;
  double time_ = 0.0;
  int scans_ = 0;
  std::vector<double> raw_;
  std::vector<std::optional<double>> entered_at_;
  std::vector<bool> engaged_;
};

void WriteEventsCsv(std::ostream& os, const std::vector<HandoverEvent>& events);

}  // namespace mmw

#endif  // MMW_HANDOVER_HPP_
