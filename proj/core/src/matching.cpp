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
#include <numeric>
#include <optional>

#include "mmw/matching.hpp"

namespace mmw {
namespace {

std::vector<Contract> ContractsOf(const Plan& plan, int u, int k_count) {
  std::vector<Contract> out;
  for (int k = 0; k < k_count; ++k) {
    Contract c;
    if (ContractAt(plan, u, k, &c)) out.push_back(c);
  }
  return out;
}

bool Holds(const std::vector<Contract>& held, const Contract& c) {
  return std::find(held.begin(), held.end(), c) != held.end();
}

void DropMue(std::vector<Contract>& held, int u) {
  held.erase(std::remove_if(held.begin(), held.end(),
                            [u](const Contract& c) { return c.mue == u; }),
             held.end());
}

// Period-1 preference list for the single-period game: acceptable SBSs among
// the period-1 candidates, by Φ then index.
std::vector<int> SinglePeriodList(const GameInstance& g, int u) {
  std::vector<int> ks;
  for (int k : g.mues[u].first_candidates) {
    if (std::find(ks.begin(), ks.end(), k) == ks.end() && MueUtility(g, u, k) >= 0.0) {
      ks.push_back(k);
    }
  }
  std::sort(ks.begin(), ks.end(), [&](int a, int b) {
    const double pa = MueUtility(g, u, a), pb = MueUtility(g, u, b);
    return pa != pb ? pa > pb : a < b;
  });
  return ks;
}

}  // namespace

int DynamicMatching::Load(int k, int period) const {
  int n = 0;
  for (const Contract& c : held.at(k)) n += period == 1 ? c.period1 : c.period2;
  return n;
}

int DynamicMatching::TotalProposals() const {
  return std::accumulate(proposals_per_sbs.begin(), proposals_per_sbs.end(), 0);
}

SinglePeriodMatching DeferredAcceptance(const GameInstance& g) {
  g.Validate();
  const int n_u = static_cast<int>(g.mues.size());
  const int n_k = static_cast<int>(g.sbss.size());
  std::vector<std::vector<int>> lists(n_u);
  for (int u = 0; u < n_u; ++u) lists[u] = SinglePeriodList(g, u);

  std::vector<size_t> next(n_u, 0);
  std::vector<int> match(n_u, -1);
  std::vector<std::vector<int>> held(n_k);
  SinglePeriodMatching out;
  out.proposals_per_sbs.assign(n_k, 0);

  auto before = [&](int a, int b) {
    const double ga = SbsUtility(g, a, 0), gb = SbsUtility(g, b, 0);
    return ga != gb ? ga > gb : a < b;
  };
  for (;;) {
    std::vector<std::vector<int>> offers(n_k);
    bool any = false;
    for (int u = 0; u < n_u; ++u) {
      if (match[u] >= 0 || next[u] >= lists[u].size()) continue;
      const int k = lists[u][next[u]++];
      offers[k].push_back(u);
      ++out.proposals_per_sbs[k];
      any = true;
    }
    if (!any) break;
    for (int k = 0; k < n_k; ++k) {
      if (offers[k].empty()) continue;
      std::vector<int> pool = held[k];
      pool.insert(pool.end(), offers[k].begin(), offers[k].end());
      std::sort(pool.begin(), pool.end(), before);
      held[k].clear();
      for (int u : pool) {
        const bool ok = SbsUtility(g, u, k) >= 0.0 &&
                        static_cast<int>(held[k].size()) < g.sbss[k].quota;
        if (ok) {
          held[k].push_back(u);
          match[u] = k;
        } else if (match[u] == k) {
          match[u] = -1;
        }
      }
    }
  }

  out.assignment.resize(n_u);
  for (int u = 0; u < n_u; ++u) {
    if (match[u] >= 0) {
      out.assignment[u] = Slot::Sbs(match[u]);
    } else if (g.CacheSeconds(u) >= g.mues[u].scan_interval) {
      out.assignment[u] = Slot::Self();
    } else {
      out.assignment[u] = Slot::Mbs();
    }
  }
  return out;
}

DynamicMatching DynamicMatch(const GameInstance& g) {
  return DynamicMatch(g, BuildPreferences(g));
}

DynamicMatching DynamicMatch(const GameInstance& g, const Profiles& profiles) {
  g.Validate();
  const int n_u = static_cast<int>(g.mues.size());
  const int n_k = static_cast<int>(g.sbss.size());
  DynamicMatching m;
  m.plan.assign(n_u, Plan{});
  m.held.assign(n_k, {});
  m.proposals_per_sbs.assign(n_k, 0);

  std::vector<size_t> next(n_u, 0);
  std::vector<int> current(n_u, -1);  // index into the MUE's profile

  // Stage 1: plan proposals until no plan is rejected.
  for (;;) {
    std::vector<std::vector<Contract>> offers(n_k);
    std::vector<int> pending(n_u, -1);
    bool any = false;
    for (int u = 0; u < n_u; ++u) {
      const auto& ranked = profiles.mue[u];
      while (current[u] < 0 && next[u] < ranked.size()) {
        const int idx = static_cast<int>(next[u]++);
        const Plan& plan = ranked[idx].plan;
        if (plan.second.IsMbs() && !MbsAdmits(g, u, plan.first)) continue;
        const auto contracts = ContractsOf(plan, u, n_k);
        if (contracts.empty()) {
          current[u] = idx;
          break;
        }
        for (const Contract& c : contracts) {
          offers[c.sbs].push_back(c);
          ++m.proposals_per_sbs[c.sbs];
        }
        pending[u] = idx;
        any = true;
        break;
      }
    }
    if (!any) break;

    for (int k = 0; k < n_k; ++k) {
      if (offers[k].empty()) continue;
      std::vector<Contract> pool = m.held[k];
      pool.insert(pool.end(), offers[k].begin(), offers[k].end());
      m.held[k] = ChooseContracts(g, k, pool);
    }
    // A plan survives only if every SBS it involves keeps its contract; a
    // partially rejected plan withdraws its remaining contracts.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int u = 0; u < n_u; ++u) {
        const int idx = pending[u] >= 0 ? pending[u] : current[u];
        if (idx < 0) continue;
        const auto contracts = ContractsOf(profiles.mue[u][idx].plan, u, n_k);
        if (contracts.empty()) continue;
        const bool kept = std::all_of(contracts.begin(), contracts.end(),
                                      [&](const Contract& c) { return Holds(m.held[c.sbs], c); });
        if (kept) continue;
        for (const Contract& c : contracts) {
          if (Holds(m.held[c.sbs], c)) {
            DropMue(m.held[c.sbs], u);
            changed = true;
          }
        }
        pending[u] = -1;
        current[u] = -1;
      }
    }
    for (int u = 0; u < n_u; ++u) {
      if (pending[u] >= 0) current[u] = pending[u];
    }
  }
  for (int u = 0; u < n_u; ++u) m.plan[u] = profiles.mue[u][current[u]].plan;

  // Stage 2: MUEs planning a cache period in period 2 may move to an SBS with
  // period-2 room or to an admitting MBS; full SBSs do not take part.
  std::vector<int> room(n_k);
  for (int k = 0; k < n_k; ++k) room[k] = g.sbss[k].quota - m.Load(k, 2);
  std::vector<std::vector<int>> options(n_u);
  for (int u = 0; u < n_u; ++u) {
    if (!m.plan[u].second.IsSelf()) continue;
    for (int i = 0; i < current[u]; ++i) {
      const Plan& p = profiles.mue[u][i].plan;
      if (p.first == m.plan[u].first && !p.second.IsSelf()) options[u].push_back(i);
    }
  }
  std::vector<size_t> next2(n_u, 0);
  std::vector<int> accepted(n_u, -1);
  std::vector<std::vector<int>> hold2(n_k);
  for (;;) {
    std::vector<std::vector<int>> offers(n_k);
    bool any = false;
    for (int u = 0; u < n_u; ++u) {
      while (accepted[u] < 0 && next2[u] < options[u].size()) {
        const int idx = options[u][next2[u]++];
        const Plan& p = profiles.mue[u][idx].plan;
        if (p.second.IsMbs()) {
          if (MbsAdmits(g, u, p.first)) accepted[u] = idx;
          continue;
        }
        const int k = p.second.sbs;
        if (room[k] <= 0) continue;
        offers[k].push_back(u);
        ++m.proposals_per_sbs[k];
        any = true;
        break;
      }
    }
    if (!any) break;
    for (int k = 0; k < n_k; ++k) {
      if (offers[k].empty()) continue;
      std::vector<int> pool = hold2[k];
      pool.insert(pool.end(), offers[k].begin(), offers[k].end());
      std::sort(pool.begin(), pool.end(), [&](int a, int b) {
        return HigherPriority(g, {a, k, false, true}, {b, k, false, true});
      });
      hold2[k].clear();
      for (int u : pool) {
        if (static_cast<int>(hold2[k].size()) < room[k]) {
          hold2[k].push_back(u);
          accepted[u] = -2;  // provisional, resolved below
        } else {
          accepted[u] = -1;
        }
      }
    }
  }
  for (int u = 0; u < n_u; ++u) {
    if (accepted[u] == -1) continue;
    int idx = accepted[u];
    if (idx == -2) idx = options[u][next2[u] - 1];
    m.plan[u] = profiles.mue[u][idx].plan;
    if (m.plan[u].second.IsSbs()) {
      m.held[m.plan[u].second.sbs].push_back({u, m.plan[u].second.sbs, false, true});
    }
    ++m.stage2_moves;
  }
  return m;
}

DynamicMatching MatchingFromPlans(const GameInstance& g,
                                  const std::vector<Plan>& plans) {
  const int n_k = static_cast<int>(g.sbss.size());
  DynamicMatching m;
  m.plan = plans;
  m.held.assign(n_k, {});
  m.proposals_per_sbs.assign(n_k, 0);
  for (int u = 0; u < static_cast<int>(plans.size()); ++u) {
    for (const Contract& c : ContractsOf(plans[u], u, n_k)) m.held[c.sbs].push_back(c);
  }
  return m;
}

Slot RealizedSlot(const GameInstance& g, const DynamicMatching& m, int u,
                  int period) {
  const Slot& s = period == 1 ? m.Mu1(u) : m.Mu2(u);
  if (s.IsSelf() && !CacheCovers(g, u, m.plan[u], period)) return Slot::Mbs();
  return s;
}

}  // namespace mmw
