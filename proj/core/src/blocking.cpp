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
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mmw/matching.hpp"

namespace mmw {
namespace {

constexpr int kUnlisted = std::numeric_limits<int>::max();

int RankOf(const std::vector<RankedPlan>& ranked, const Plan& p) {
  for (int i = 0; i < static_cast<int>(ranked.size()); ++i) {
    if (ranked[i].plan == p) return i;
  }
  return kUnlisted;
}

// SBS choice by brute force: the feasible subset that is lexicographically
// largest along the priority order.
std::vector<Contract> EnumeratedChoice(const GameInstance& g, int k,
                                       std::vector<Contract> offers) {
  if (offers.size() > 22) {
    throw std::length_error("too many contracts for subset enumeration");
  }
  std::sort(offers.begin(), offers.end(), [&](const Contract& a, const Contract& b) {
    return HigherPriority(g, a, b);
  });
  const int n = static_cast<int>(offers.size());
  const int quota = g.sbss[k].quota;
  std::uint32_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int c1 = 0, c2 = 0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask >> (n - 1 - i) & 1u)) continue;
      const Contract& c = offers[i];
      if (c.period1 && SbsUtility(g, c.mue, k) < 0.0) ok = false;
      c1 += c.period1;
      c2 += c.period2;
      for (int j = 0; j < i && ok; ++j) {
        if (!(mask >> (n - 1 - j) & 1u)) continue;
        const Contract& d = offers[j];
        if (d.mue == c.mue && ((d.period1 && c.period1) || (d.period2 && c.period2))) {
          ok = false;
        }
      }
    }
    if (ok && c1 <= quota && c2 <= quota && mask > best) best = mask;
  }
  std::vector<Contract> out;
  for (int i = 0; i < n; ++i) {
    if (best >> (n - 1 - i) & 1u) out.push_back(offers[i]);
  }
  return out;
}

bool Chosen(const GameInstance& g, const DynamicMatching& m, int k, int u,
            const Contract& c) {
  std::vector<Contract> pool;
  for (const Contract& h : m.held[k]) {
    if (h.mue != u) pool.push_back(h);
  }
  pool.push_back(c);
  const auto chosen = EnumeratedChoice(g, k, pool);
  return std::find(chosen.begin(), chosen.end(), c) != chosen.end();
}

void CheckConsistency(const DynamicMatching& m, const GameInstance& g) {
  if (m.plan.size() != g.mues.size() || m.held.size() != g.sbss.size()) {
    throw std::invalid_argument("matching does not fit the instance");
  }
  for (int k = 0; k < static_cast<int>(g.sbss.size()); ++k) {
    int c1 = 0, c2 = 0;
    for (const Contract& c : m.held[k]) {
      c1 += c.period1;
      c2 += c.period2;
      const Plan& p = m.plan.at(c.mue);
      if ((c.period1 && !(p.first == Slot::Sbs(k))) ||
          (c.period2 && !(p.second == Slot::Sbs(k)))) {
        throw std::invalid_argument("held contract disagrees with the MUE plan");
      }
    }
    if (c1 > g.sbss[k].quota || c2 > g.sbss[k].quota) {
      throw std::invalid_argument("quota exceeded at SBS k" + std::to_string(k + 1));
    }
  }
  for (int u = 0; u < static_cast<int>(m.plan.size()); ++u) {
    for (int t = 1; t <= 2; ++t) {
      const Slot& s = t == 1 ? m.plan[u].first : m.plan[u].second;
      if (!s.IsSbs()) continue;
      const auto& held = m.held.at(s.sbs);
      const bool found = std::any_of(held.begin(), held.end(), [&](const Contract& c) {
        return c.mue == u && (t == 1 ? c.period1 : c.period2);
      });
      if (!found) throw std::invalid_argument("plan slot without a held contract");
    }
  }
}

Clause PairClause(const Plan& p) {
  if (p.first.IsSbs() && p.second.IsSbs()) return Clause::kPairTwoPeriod;
  return p.first.IsSbs() ? Clause::kPairFirstOnly : Clause::kPairSecondOnly;
}

}  // namespace

std::string ClauseName(Clause c) {
  switch (c) {
    case Clause::kQuota: return "quota";
    case Clause::kMueRationality: return "mue_rationality";
    case Clause::kSbsRationality: return "sbs_rationality";
    case Clause::kPairTwoPeriod: return "pair_kk";
    case Clause::kPairFirstOnly: return "pair_ku";
    case Clause::kPairSecondOnly: return "pair_uk";
    case Clause::kPeriod2Unilateral: return "period2_unilateral";
    case Clause::kPeriod2Pair: return "period2_pair";
    case Clause::kSinglePeriodPair: return "single_period_pair";
  }
  return "unknown";
}

std::string Violation::Describe() const {
  std::ostringstream os;
  os << "period " << period << ' ' << ClauseName(clause) << " u" << mue + 1;
  if (!bs.IsSelf()) os << ' ' << SlotLabel(bs, mue);
  os << " plan " << PlanLabel(plan, mue);
  return os.str();
}

std::vector<Violation> FindBlockingPairs(const DynamicMatching& m,
                                         const GameInstance& g, int period) {
  if (period != 1 && period != 2) throw std::invalid_argument("period must be 1 or 2");
  CheckConsistency(m, g);
  const Profiles prefs = BuildPreferences(g);
  const int n_u = static_cast<int>(g.mues.size());
  const int n_k = static_cast<int>(g.sbss.size());
  std::vector<Violation> out;

  for (int u = 0; u < n_u; ++u) {
    const auto& ranked = prefs.mue[u];
    const int rank = RankOf(ranked, m.plan[u]);

    if (period == 1) {
      if (rank == kUnlisted) {
        out.push_back({1, Clause::kMueRationality, u, Slot::Self(), m.plan[u]});
      }
      for (int k = 0; k < n_k; ++k) {
        for (const Contract& c : m.held[k]) {
          if (c.mue == u && c.period1 && SbsUtility(g, u, k) < 0.0) {
            out.push_back({1, Clause::kSbsRationality, u, Slot::Sbs(k), m.plan[u]});
          }
        }
      }
      for (int i = 0; i < std::min(rank, static_cast<int>(ranked.size())); ++i) {
        const Plan& p = ranked[i].plan;
        // MBS periods are settled in period 2.
        if (p.second.IsMbs()) continue;
        std::vector<Contract> contracts;
        for (int k = 0; k < n_k; ++k) {
          Contract c;
          if (ContractAt(p, u, k, &c)) contracts.push_back(c);
        }
        if (contracts.empty()) continue;
        const bool all = std::all_of(contracts.begin(), contracts.end(), [&](const Contract& c) {
          return Chosen(g, m, c.sbs, u, c);
        });
        if (all) out.push_back({1, PairClause(p), u, Slot::Sbs(contracts.front().sbs), p});
      }
      continue;
    }

    // Period 2, µ1 fixed.
    const Slot first = m.plan[u].first;
    for (int i = 0; i < std::min(rank, static_cast<int>(ranked.size())); ++i) {
      const Plan& p = ranked[i].plan;
      if (!(p.first == first)) continue;
      if (p.second.IsSelf()) {
        out.push_back({2, Clause::kPeriod2Unilateral, u, Slot::Self(), p});
      } else if (p.second.IsMbs()) {
        if (MbsAdmits(g, u, first)) out.push_back({2, Clause::kPeriod2Pair, u, Slot::Mbs(), p});
      } else {
        const int k = p.second.sbs;
        // A full SBS does not take part in period-2 deviations.
        if (m.Load(k, 2) < g.sbss[k].quota) {
          out.push_back({2, Clause::kPeriod2Pair, u, Slot::Sbs(k), p});
        }
      }
    }
  }
  return out;
}

std::vector<Violation> FindSinglePeriodBlockingPairs(
    const SinglePeriodMatching& m, const GameInstance& g) {
  const int n_u = static_cast<int>(g.mues.size());
  const int n_k = static_cast<int>(g.sbss.size());
  std::vector<std::vector<int>> members(n_k);
  for (int u = 0; u < n_u; ++u) {
    if (m.assignment[u].IsSbs()) members[m.assignment[u].sbs].push_back(u);
  }
  std::vector<Violation> out;
  for (int k = 0; k < n_k; ++k) {
    if (static_cast<int>(members[k].size()) > g.sbss[k].quota) {
      throw std::invalid_argument("quota exceeded at SBS k" + std::to_string(k + 1));
    }
  }
  auto prefers_mue = [&](int k, int a, int b) {  // a before b at SBS k
    const double ga = SbsUtility(g, a, k), gb = SbsUtility(g, b, k);
    return ga != gb ? ga > gb : a < b;
  };
  for (int u = 0; u < n_u; ++u) {
    const Slot& s = m.assignment[u];
    const Plan shown{s, Slot::Self()};
    if (s.IsSbs()) {
      const int k = s.sbs;
      if (MueUtility(g, u, k) < 0.0) out.push_back({1, Clause::kMueRationality, u, s, shown});
      if (SbsUtility(g, u, k) < 0.0) out.push_back({1, Clause::kSbsRationality, u, s, shown});
    }
    const auto& cands = g.mues[u].first_candidates;
    for (int k = 0; k < n_k; ++k) {
      if (s == Slot::Sbs(k)) continue;
      if (std::find(cands.begin(), cands.end(), k) == cands.end()) continue;
      const double phi = MueUtility(g, u, k);
      if (phi < 0.0) continue;
      if (s.IsSbs()) {
        const double cur = MueUtility(g, u, s.sbs);
        if (!(phi > cur || (phi == cur && k < s.sbs))) continue;
      }
      if (SbsUtility(g, u, k) < 0.0) continue;
      bool wants = static_cast<int>(members[k].size()) < g.sbss[k].quota;
      for (int w : members[k]) wants = wants || prefers_mue(k, u, w);
      if (wants) out.push_back({1, Clause::kSinglePeriodPair, u, Slot::Sbs(k), shown});
    }
  }
  return out;
}

}  // namespace mmw
