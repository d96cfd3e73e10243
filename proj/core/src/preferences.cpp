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

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mmw/common.hpp"
#include "mmw/geometry.hpp"
#include "mmw/matching.hpp"

namespace mmw {
namespace {

int SbsSlots(const Plan& p) { return p.first.IsSbs() + p.second.IsSbs(); }
int MbsSlots(const Plan& p) { return p.first.IsMbs() + p.second.IsMbs(); }

double SlotPayoff(const GameInstance& g, int u, const Slot& s) {
  if (s.IsSbs()) return MueUtility(g, u, s.sbs);
  if (s.IsMbs()) return g.mbs_payoff;
  return 0.0;
}

// Strict plan order: score, then more SBS periods, an SBS period first,
// MBS over cache, lower SBS indices.
bool PlanBefore(const RankedPlan& a, const RankedPlan& b) {
  if (a.score != b.score) return a.score > b.score;
  const auto key = [](const Plan& p) {
    return std::make_tuple(-SbsSlots(p), p.first.IsSbs() ? 0 : 1, -MbsSlots(p),
                           p.first.sbs, p.second.sbs);
  };
  return key(a.plan) < key(b.plan);
}

std::vector<int> SortedUnique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::string SlotLabel(const Slot& s, int mue) {
  switch (s.kind) {
    case Slot::Kind::kSbs: return "k" + std::to_string(s.sbs + 1);
    case Slot::Kind::kMbs: return "k0";
    case Slot::Kind::kSelf: return "u" + std::to_string(mue + 1);
  }
  return "?";
}

std::string PlanLabel(const Plan& p, int mue) {
  return SlotLabel(p.first, mue) + SlotLabel(p.second, mue);
}

void GameInstance::Validate() const {
  if (epsilon < 0.0) throw DomainError("epsilon must be nonnegative");
  if (!(t_mts > 0.0)) throw DomainError("t_mts must be positive");
  if (!(play_rate > 0.0)) throw DomainError("play rate must be positive");
  const int k_count = static_cast<int>(sbss.size());
  for (const SbsSpec& s : sbss) {
    if (s.quota < 1) throw DomainError("SBS quota must be >= 1");
    if (!(s.radius > 0.0)) throw DomainError("SBS radius must be positive");
  }
  for (const MueSpec& m : mues) {
    if (m.p_th < 0.0 || m.p_th > 1.0) throw DomainError("P_th must lie in [0, 1]");
    if (m.speed < 0.0) throw DomainError("speed must be nonnegative");
    if (m.cache_segments < 0.0) throw DomainError("cache must be nonnegative");
    if (!(m.scan_interval > 0.0)) throw DomainError("scan interval must be positive");
    for (int k : m.first_candidates) {
      if (k < 0 || k >= k_count) throw DomainError("candidate SBS out of range");
    }
    for (int k : m.second_candidates) {
      if (k < 0 || k >= k_count) throw DomainError("candidate SBS out of range");
    }
  }
}

double MueUtility(const GameInstance& g, int u, int k) {
  const MueSpec& m = g.mues.at(u);
  return m.p_th - HofProbability(m.speed, g.t_mts, g.sbss.at(k).radius);
}

double SbsUtility(const GameInstance& g, int u, int /*k*/) {
  return g.mues.at(u).scan_interval - g.CacheSeconds(u);
}

bool MbsAdmits(const GameInstance& g, int u, const Slot& first) {
  if (!first.IsSbs()) return true;
  return MueUtility(g, u, first.sbs) < g.epsilon;
}

bool CacheCovers(const GameInstance& g, int u, const Plan& plan, int period) {
  const double playback = g.CacheSeconds(u);
  const double ts = g.mues[u].scan_interval;
  if (period == 1) return playback >= ts;
  if (plan.first.IsSelf()) return playback >= 2.0 * ts;
  if (plan.first.IsSbs()) return true;
  return playback >= ts;
}

Profiles BuildPreferences(const GameInstance& g) {
  g.Validate();
  Profiles out;
  out.mue.resize(g.mues.size());
  for (int u = 0; u < static_cast<int>(g.mues.size()); ++u) {
    const MueSpec& m = g.mues[u];
    std::vector<int> first, second;
    for (int k : SortedUnique(m.first_candidates)) {
      if (MueUtility(g, u, k) >= 0.0 && SbsUtility(g, u, k) >= 0.0) {
        first.push_back(k);
      }
    }
    for (int k : SortedUnique(m.second_candidates)) {
      if (MueUtility(g, u, k) >= 0.0) second.push_back(k);
    }

    std::vector<Plan> plans;
    for (int k : first) plans.push_back({Slot::Sbs(k), Slot::Self()});
    for (int k : second) plans.push_back({Slot::Self(), Slot::Sbs(k)});
    for (int k : first) {
      for (int k2 : second) {
        if (k == k2 || g.cross_plans) plans.push_back({Slot::Sbs(k), Slot::Sbs(k2)});
      }
    }
    if (second.empty()) {
      for (int k : first) plans.push_back({Slot::Sbs(k), Slot::Mbs()});
      plans.push_back({Slot::Self(), Slot::Mbs()});
    }
    plans.push_back({Slot::Self(), Slot::Self()});

    auto& ranked = out.mue[u];
    for (const Plan& p : plans) {
      ranked.push_back({p, SlotPayoff(g, u, p.first) + SlotPayoff(g, u, p.second)});
    }
    std::sort(ranked.begin(), ranked.end(), PlanBefore);
    // Individual rationality: nothing below the outside option.
    const auto outside = std::find_if(ranked.begin(), ranked.end(), [](const RankedPlan& r) {
      return r.plan.first.IsSelf() && r.plan.second.IsSelf();
    });
    ranked.erase(outside + 1, ranked.end());
  }
  return out;
}

bool ContractAt(const Plan& plan, int u, int k, Contract* out) {
  const bool p1 = plan.first == Slot::Sbs(k);
  const bool p2 = plan.second == Slot::Sbs(k);
  if (!p1 && !p2) return false;
  if (out != nullptr) *out = Contract{u, k, p1, p2};
  return true;
}

bool HigherPriority(const GameInstance& g, const Contract& a,
                    const Contract& b) {
  const auto key = [&](const Contract& c) {
    return std::make_tuple(c.IsDouble() ? 1 : 0, -SbsUtility(g, c.mue, c.sbs),
                           c.mue, c.period1 ? 1 : 2);
  };
  return key(a) < key(b);
}

std::vector<Contract> ChooseContracts(const GameInstance& g, int k,
                                      std::vector<Contract> offers) {
  std::sort(offers.begin(), offers.end(), [&](const Contract& a, const Contract& b) {
    return HigherPriority(g, a, b);
  });
  const int quota = g.sbss.at(k).quota;
  int used1 = 0, used2 = 0;
  std::set<std::pair<int, int>> taken;  // (mue, period)
  std::vector<Contract> chosen;
  for (const Contract& c : offers) {
    if (c.sbs != k) throw std::invalid_argument("contract offered to the wrong SBS");
    if (c.period1 && (SbsUtility(g, c.mue, k) < 0.0 || used1 >= quota)) continue;
    if (c.period2 && used2 >= quota) continue;
    if ((c.period1 && taken.count({c.mue, 1})) || (c.period2 && taken.count({c.mue, 2}))) {
      continue;
    }
    if (c.period1) {
      ++used1;
      taken.insert({c.mue, 1});
    }
    if (c.period2) {
      ++used2;
      taken.insert({c.mue, 2});
    }
    chosen.push_back(c);
  }
  return chosen;
}

std::vector<std::string> SbsProfileLabels(const GameInstance& g,
                                          const Profiles& p, int k) {
  std::vector<Contract> contracts;
  for (int u = 0; u < static_cast<int>(p.mue.size()); ++u) {
    for (const RankedPlan& r : p.mue[u]) {
      Contract c;
      if (ContractAt(r.plan, u, k, &c) &&
          std::find(contracts.begin(), contracts.end(), c) == contracts.end()) {
        contracts.push_back(c);
      }
    }
  }
  std::sort(contracts.begin(), contracts.end(), [&](const Contract& a, const Contract& b) {
    return HigherPriority(g, a, b);
  });
  const std::string idle = "k" + std::to_string(k + 1);
  std::vector<std::string> labels;
  for (const Contract& c : contracts) {
    const std::string mue = "u" + std::to_string(c.mue + 1);
    labels.push_back((c.period1 ? mue : idle) + (c.period2 ? mue : idle));
  }
  labels.push_back(idle + idle);
  return labels;
}

std::vector<std::string> MbsProfileLabels(const GameInstance& g,
                                          const Profiles& p) {
  std::vector<int> mues;
  for (int u = 0; u < static_cast<int>(p.mue.size()); ++u) {
    for (const RankedPlan& r : p.mue[u]) {
      if (r.plan.second.IsMbs() && MbsAdmits(g, u, r.plan.first)) {
        mues.push_back(u);
        break;
      }
    }
  }
  std::sort(mues.begin(), mues.end(), [&](int a, int b) {
    const double ga = SbsUtility(g, a, 0), gb = SbsUtility(g, b, 0);
    return ga != gb ? ga > gb : a < b;
  });
  std::vector<std::string> labels;
  for (int u : mues) labels.push_back("k0u" + std::to_string(u + 1));
  labels.push_back("k0k0");
  return labels;
}

GameInstance TwoUserTwoCellInstance(bool mbs_admits) {
  GameInstance g;
  g.sbss = {{30.0, 1}, {20.0, 1}};
  MueSpec u1;
  u1.speed = 8.0;
  u1.cache_segments = 1000.0;
  u1.scan_interval = 5.0;
  u1.p_th = (mbs_admits ? 0.03 : 0.10) + HofProbability(8.0, 1.0, 30.0);
  u1.first_candidates = {0};
  MueSpec u2;
  u2.speed = 4.0;
  u2.cache_segments = 1000.0;
  u2.scan_interval = 3.0;
  u2.p_th = 0.1;
  u2.first_candidates = {0};
  u2.second_candidates = {1};
  g.mues = {u1, u2};
  return g;
}

}  // namespace mmw
