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

#include "mmw/handover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mmw/common.hpp"

namespace mmw {
namespace {

constexpr double kNoSignal = -std::numeric_limits<double>::infinity();
constexpr double kTimeEps = 1e-9;

}  // namespace

std::string PhaseName(Phase p) {
  switch (p) {
    case Phase::kIdle: return "idle";
    case Phase::kScanning: return "scanning";
    case Phase::kTttWait: return "ttt_wait";
    case Phase::kExecuting: return "executing";
    case Phase::kCoasting: return "coasting";
    case Phase::kMbsAttached: return "mbs_attached";
    case Phase::kSbsAttached: return "sbs_attached";
  }
  return "unknown";
}

std::string EventTypeName(EventType t) {
  switch (t) {
    case EventType::kScan: return "scan";
    case EventType::kTttStart: return "ttt_start";
    case EventType::kTttAbort: return "ttt_abort";
    case EventType::kTrigger: return "ho_trigger";
    case EventType::kHandoverComplete: return "ho_complete";
    case EventType::kCellExit: return "cell_exit";
    case EventType::kHof: return "hof";
    case EventType::kMbsFallback: return "mbs_fallback";
  }
  return "unknown";
}

void HandoverConfig::Validate() const {
  if (ttt < 0.0) throw DomainError("ttt must be nonnegative");
  if (execution_delay < 0.0) throw DomainError("execution delay must be nonnegative");
  if (filter_window < 1) throw DomainError("filter window must be >= 1");
  if (!(t_mts > 0.0)) throw DomainError("t_mts must be positive");
  if (!(default_scan_interval > 0.0)) throw DomainError("scan interval must be positive");
}

int HofIndicator(double tos, double t_mts) {
  if (tos < 0.0) throw DomainError("time of stay must be nonnegative");
  return tos < t_mts ? 1 : 0;
}

HandoverMachine::HandoverMachine(int mue, int n_bs, HandoverConfig config)
    : mue_(mue),
      n_bs_(n_bs),
      cfg_(config),
      raw_(n_bs, kNoSignal),
      entered_at_(n_bs),
      engaged_(n_bs, false) {
  if (n_bs < 1) throw DomainError("need at least the MBS");
  cfg_.Validate();
  state_.rss_window.resize(n_bs);
}

double HandoverMachine::Filtered(int bs) const {
  const auto& w = state_.rss_window[bs];
  if (w.empty()) return kNoSignal;
  double sum = 0.0;
  for (double x : w) sum += x;
  return sum / static_cast<double>(w.size());
}

void HandoverMachine::Emit(StepOutput& out, EventType type, int cell,
                           double tos) {
  out.events.push_back({time_, mue_, type, cell, tos});
}

void HandoverMachine::FallBackToMbs(StepOutput& out) {
  state_.serving = kMbsId;
  state_.candidate.reset();
  state_.ttt_elapsed = 0.0;
  state_.exec_elapsed = 0.0;
  state_.phase = Phase::kMbsAttached;
  Emit(out, EventType::kMbsFallback, kMbsId);
}

void HandoverMachine::Scan(StepOutput& out, const CacheState* cache) {
  ++scans_;
  Emit(out, EventType::kScan, -1);
  const double interval =
      (cfg_.caching && cache != nullptr)
          ? NextScanInterval(*cache, cfg_.ttt, cfg_.default_scan_interval)
          : cfg_.default_scan_interval;
  state_.next_scan_time = time_ + interval;
  if (state_.phase == Phase::kTttWait || state_.phase == Phase::kExecuting) {
    return;
  }
  const Phase resume = state_.phase;
  state_.phase = Phase::kScanning;
  int best = -1;
  double best_rss = kNoSignal;
  for (int b = 1; b < n_bs_; ++b) {
    if (state_.serving == b || raw_[b] < cfg_.rss_threshold_dbm) continue;
    const double f = Filtered(b);
    if (f > best_rss) {
      best = b;
      best_rss = f;
    }
  }
  const double serving_rss =
      state_.serving ? Filtered(*state_.serving) : kNoSignal;
  if (best >= 0 && best_rss + cfg_.hysteresis_db > serving_rss) {
    state_.candidate = best;
    state_.ttt_elapsed = 0.0;
    state_.phase = Phase::kTttWait;
    engaged_[best] = true;
    Emit(out, EventType::kTttStart, best);
  } else {
    state_.phase = resume;
  }
}

StepOutput HandoverMachine::Step(const std::vector<Measurement>& measurements,
                                 double dt, const CacheState* cache) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  StepOutput out;

  std::fill(raw_.begin(), raw_.end(), kNoSignal);
  for (const Measurement& m : measurements) {
    if (m.bs < 0 || m.bs >= n_bs_) {
      throw std::invalid_argument("unknown BS id " + std::to_string(m.bs));
    }
    raw_[m.bs] = m.rss_dbm;
  }
  for (int b = 0; b < n_bs_; ++b) {
    auto& w = state_.rss_window[b];
    if (raw_[b] == kNoSignal) {
      w.clear();
      continue;
    }
    w.push_back(raw_[b]);
    while (static_cast<int>(w.size()) > cfg_.filter_window) w.pop_front();
  }

  if (state_.phase == Phase::kIdle) {
    state_.serving = kMbsId;
    state_.phase = Phase::kMbsAttached;
  }
  const bool muted = cfg_.caching && cache != nullptr &&
                     cache->PlaybackSeconds() > cfg_.ttt;
  if (state_.phase == Phase::kMbsAttached || state_.phase == Phase::kCoasting) {
    state_.phase = muted ? Phase::kCoasting : Phase::kMbsAttached;
  }

  // Cell membership at the start of the step.
  for (int b = 1; b < n_bs_; ++b) {
    const bool inside = raw_[b] >= cfg_.rss_threshold_dbm;
    if (inside && !entered_at_[b]) {
      entered_at_[b] = time_;
      engaged_[b] = state_.phase != Phase::kCoasting;
    } else if (!inside && entered_at_[b]) {
      const double tos = time_ - *entered_at_[b];
      Emit(out, EventType::kCellExit, b, tos);
      if (engaged_[b]) {
        const bool failed = HofIndicator(tos, cfg_.t_mts) == 1;
        out.hofs.push_back({mue_, b, tos, failed});
        if (failed) Emit(out, EventType::kHof, b, tos);
      }
      const bool involved = state_.serving == b || state_.candidate == b;
      entered_at_[b].reset();
      engaged_[b] = false;
      if (involved) FallBackToMbs(out);
    }
  }

  if (time_ + kTimeEps >= state_.next_scan_time) Scan(out, cache);

  time_ += dt;
  if (state_.phase == Phase::kTttWait) {
    const int c = *state_.candidate;
    const double serving_rss =
        state_.serving ? Filtered(*state_.serving) : kNoSignal;
    if (Filtered(c) + cfg_.hysteresis_db > serving_rss) {
      state_.ttt_elapsed = std::min(state_.ttt_elapsed + dt, cfg_.ttt);
      if (state_.ttt_elapsed + kTimeEps >= cfg_.ttt) {
        state_.phase = Phase::kExecuting;
        state_.exec_elapsed = 0.0;
        Emit(out, EventType::kTrigger, c);
      }
    } else {
      Emit(out, EventType::kTttAbort, c);
      state_.candidate.reset();
      state_.ttt_elapsed = 0.0;
      state_.phase = muted ? Phase::kCoasting : Phase::kMbsAttached;
      if (state_.serving && *state_.serving != kMbsId) {
        state_.phase = Phase::kSbsAttached;
      }
    }
  } else if (state_.phase == Phase::kExecuting) {
    state_.exec_elapsed += dt;
    if (state_.exec_elapsed + kTimeEps >= cfg_.execution_delay) {
      state_.serving = state_.candidate;
      state_.candidate.reset();
      state_.ttt_elapsed = 0.0;
      state_.phase = Phase::kSbsAttached;
      Emit(out, EventType::kHandoverComplete, *state_.serving);
    }
  }

  const std::optional<int> tracked =
      state_.candidate ? state_.candidate : state_.serving;
  state_.tos_elapsed = (tracked && *tracked != kMbsId && entered_at_[*tracked])
                           ? time_ - *entered_at_[*tracked]
                           : 0.0;
  return out;
}

void WriteEventsCsv(std::ostream& os, const std::vector<HandoverEvent>& events) {
  os << "time_s,mue,type,cell,tos_s\n";
  for (const HandoverEvent& e : events) {
    os << e.time << ',' << e.mue << ',' << EventTypeName(e.type) << ','
       << e.cell << ',' << e.tos << '\n';
  }
}

}  // namespace mmw
