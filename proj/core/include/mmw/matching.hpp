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

#ifndef MMW_MATCHING_HPP_
#define MMW_MATCHING_HPP_

#include <string>
#include <vector>

namespace mmw {

enum class PlayerKind { kMue, kSbs, kMbs };

struct PlayerId {
  PlayerKind kind = PlayerKind::kMue;
  int index = 0;

  friend bool operator==(const PlayerId&, const PlayerId&) = default;
};

// One period of a plan: an SBS, the MBS, or the owner itself (an MUE on its
// cache, or an idle BS slot).
struct Slot {
  enum class Kind { kSbs, kMbs, kSelf };
  Kind kind = Kind::kSelf;
  int sbs = -1;

  static Slot Sbs(int k) { return {Kind::kSbs, k}; }
  static Slot Mbs() { return {Kind::kMbs, -1}; }
  static Slot Self() { return {Kind::kSelf, -1}; }
  bool IsSbs() const { return kind == Kind::kSbs; }
  bool IsMbs() const { return kind == Kind::kMbs; }
  bool IsSelf() const { return kind == Kind::kSelf; }
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Plan {
  Slot first;
  Slot second;

  friend bool operator==(const Plan&, const Plan&) = default;
};

// Labels use 1-based names, u1.., k1.., and k0 for the MBS: "k1k0", "u2k2".
std::string SlotLabel(const Slot& s, int mue);
std::string PlanLabel(const Plan& p, int mue);

struct MueSpec {
  double speed = 1.0;            // m/s
  double cache_segments = 0.0;   // Ω_u
  double p_th = 0.1;             // HOF tolerance P_u^th
  double scan_interval = 1.0;    // T_s(u), s
  std::vector<int> first_candidates;   // SBSs reachable in period 1
  std::vector<int> second_candidates;  // SBSs reachable in period 2
};

struct SbsSpec {
  double radius = 30.0;  // a_k, m
  int quota = 1;         // U_k^th
};

struct GameInstance {
  std::vector<MueSpec> mues;
  std::vector<SbsSpec> sbss;
  double epsilon = 0.05;     // MBS period-2 admission margin
  double t_mts = 1.0;        // s
  double play_rate = 1e3;    // Q, segments/s
  double mbs_payoff = 0.0;   // φ0, payoff of an MBS period
  bool cross_plans = false;  // allow k k' with k != k'

  void Validate() const;
  double CacheSeconds(int u) const { return mues[u].cache_segments / play_rate; }
};

// Φ(u,k) = P_u^th - (2/π) asin(v t_MTS / 2a_k), saturating HOF at 1.
double MueUtility(const GameInstance& g, int u, int k);
// Γ(u,k) = T_s(u) - Ω_u / Q.
double SbsUtility(const GameInstance& g, int u, int k);
// Period-2 MBS admission after `first`: always after a cache period, and
// after SBS k only if Φ(u,k) < ε.
bool MbsAdmits(const GameInstance& g, int u, const Slot& first);
// Cache covers a period: Ω/Q >= T_s for period 1; for period 2 after a cache
// period it must cover both (Ω/Q >= 2 T_s); after a serving period the cache
// is refilled.
bool CacheCovers(const GameInstance& g, int u, const Plan& plan, int period);

struct RankedPlan {
  Plan plan;
  double score = 0.0;
};

// A contract offered to (or held by) one SBS: which periods it covers.
struct Contract {
  int mue = 0;
  int sbs = 0;
  bool period1 = false;
  bool period2 = false;

  bool IsDouble() const { return period1 && period2; }
  friend bool operator==(const Contract&, const Contract&) = default;
};

struct Profiles {
  // Per MUE, best first. Always ends with the outside option (self, self).
  std::vector<std::vector<RankedPlan>> mue;
};

Profiles BuildPreferences(const GameInstance& g);

// SBS contract that `plan` places at SBS k, if any.
bool ContractAt(const Plan& plan, int u, int k, Contract* out);

// True if `a` has strictly higher SBS priority than `b`: single-period
// contracts before two-period ones, then Γ, MUE index and period.
bool HigherPriority(const GameInstance& g, const Contract& a,
                    const Contract& b);

// Greedy choice of SBS k over `offers` in priority order, honouring the
// per-period quota, period-1 rationality (Γ >= 0) and one contract per MUE
// per period.
std::vector<Contract> ChooseContracts(const GameInstance& g, int k,
                                      std::vector<Contract> offers);

// Ranked plan labels of SBS k (priority order, idle plan last) and of the
// MBS (admissible period-2 MUEs in Γ order, idle plan last).
std::vector<std::string> SbsProfileLabels(const GameInstance& g,
                                          const Profiles& p, int k);
std::vector<std::string> MbsProfileLabels(const GameInstance& g,
                                          const Profiles& p);

struct SinglePeriodMatching {
  std::vector<Slot> assignment;          // SBS, MBS, or self (cache)
  std::vector<int> proposals_per_sbs;
};

// MUE-proposing deferred acceptance over period-1 candidates. Unmatched MUEs
// play from the cache when Ω/Q >= T_s and go to the MBS otherwise.
SinglePeriodMatching DeferredAcceptance(const GameInstance& g);

struct DynamicMatching {
  std::vector<Plan> plan;                      // (µ1(u), µ2(u))
  std::vector<std::vector<Contract>> held;     // per SBS
  std::vector<int> proposals_per_sbs;
  int stage2_moves = 0;

  const Slot& Mu1(int u) const { return plan[u].first; }
  const Slot& Mu2(int u) const { return plan[u].second; }
  int Load(int k, int period) const;
  int TotalProposals() const;
};

// Stage 1: MUE-proposing plan deferred acceptance (ex ante stable).
// Stage 2: deferred acceptance of period-2 slots for MUEs planning to use
// their cache, restricted to SBSs with period-2 room and the MBS.
DynamicMatching DynamicMatch(const GameInstance& g);
DynamicMatching DynamicMatch(const GameInstance& g, const Profiles& profiles);

// Builds the matching that realizes the given plans, with contracts formed
// per plan (used to probe non-algorithmic matchings).
DynamicMatching MatchingFromPlans(const GameInstance& g,
                                  const std::vector<Plan>& plans);

// Association actually used in a period: a planned cache period that the
// cache cannot cover falls back to the MBS.
Slot RealizedSlot(const GameInstance& g, const DynamicMatching& m, int u,
                  int period);

enum class Clause {
  kQuota,
  kMueRationality,
  kSbsRationality,
  kPairTwoPeriod,    // kk
  kPairFirstOnly,    // ku
  kPairSecondOnly,   // uk
  kPeriod2Unilateral,
  kPeriod2Pair,
  kSinglePeriodPair,
};

std::string ClauseName(Clause c);

struct Violation {
  int period = 1;
  Clause clause = Clause::kQuota;
  int mue = -1;
  Slot bs;
  Plan plan;

  std::string Describe() const;
};

// Exhaustive scan of period-1 (ex ante) or period-2 blocking
// deviations. The SBS choice is recomputed by subset enumeration.
std::vector<Violation> FindBlockingPairs(const DynamicMatching& m,
                                         const GameInstance& g, int period);
std::vector<Violation> FindSinglePeriodBlockingPairs(
    const SinglePeriodMatching& m, const GameInstance& g);

// Two MUEs and two SBSs with unit quotas: u1 can only reach k1, u2 can reach
// k1 and then k2, and k1 ranks u1 first. `mbs_admits` sets Φ(u1,k1) below or
// above ε.
GameInstance TwoUserTwoCellInstance(bool mbs_admits);

}  // namespace mmw

#endif  // MMW_MATCHING_HPP_
