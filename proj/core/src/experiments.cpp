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

#include "mmw/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "mmw/parallel.hpp"
#include "mmw/rng.hpp"

namespace mmw {
namespace {

constexpr double kTrajectoryDt = 0.02;  // s
constexpr double kKmh = 3.6;

struct Summary {
  double mean = 0.0;
  double ci95 = 0.0;
};

Summary Summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.ci95 = 1.96 * std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

// Per-replication seed shared by every sweep point (common random numbers).
std::uint64_t ReplicationSeed(std::uint64_t seed, int rep) {
  return Rng::ForStream(seed, static_cast<std::uint64_t>(rep)).NextU64();
}

template <typename T, typename Fn>
std::vector<T> Replicate(int reps, int threads, Fn fn) {
  std::vector<T> out(static_cast<std::size_t>(reps));
  ParallelFor(out.size(), threads, [&](std::size_t i) {
    out[i] = fn(static_cast<int>(i));
  });
  return out;
}

template <typename T, typename Get>
Summary SummarizeField(const std::vector<T>& xs, Get get) {
  std::vector<double> v;
  v.reserve(xs.size());
  for (const auto& x : xs) v.push_back(get(x));
  return Summarize(v);
}

const std::vector<double>& UserSweep() {
  static const std::vector<double> u = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  return u;
}

const std::vector<double>& TrendSpeeds() {
  static const std::vector<double> v = {8, 10, 12};
  return v;
}

ExperimentResult HofVsSpeed(const ScenarioConfig& cfg, int reps, int threads) {
  ExperimentResult r;
  r.columns = {"speed_mps",           "speed_kmh",
               "hof_nocache_per_traj", "hof_nocache_ci95",
               "hof_cache_per_traj",   "hof_cache_ci95",
               "realized_hof_nocache", "realized_hof_cache",
               "attempts_nocache",     "attempts_cache",
               "hof_reduction_pct"};
  std::vector<double> speeds;
  for (int v = 1; v <= 16; ++v) speeds.push_back(v);
  speeds.push_back(60.0 / kKmh);
  for (double v : speeds) {
    struct Pair {
      TrajectoryStats off;
      TrajectoryStats on;
    };
    auto runs = Replicate<Pair>(reps, threads, [&](int rep) {
      const std::uint64_t seed = ReplicationSeed(cfg.seed, rep);
      ScenarioConfig c = cfg;
      c.n_mues = 0;
      const Scenario s = GenerateScenario(c, seed);
      Rng rng = Rng::ForStream(seed, 1);
      MueSite m;
      m.position = Vec2::FromPolar(0.5 * cfg.area_radius * std::sqrt(rng.Uniform()),
                                   rng.Uniform(0.0, kTwoPi));
      m.heading = rng.Uniform(0.0, kTwoPi);
      m.speed = v;
      return Pair{SimulateTrajectory(s, cfg, m, false, cfg.frame, kTrajectoryDt),
                  SimulateTrajectory(s, cfg, m, true, cfg.frame, kTrajectoryDt)};
    });
    const Summary off = SummarizeField(runs, [](const Pair& p) { return p.off.expected_hofs; });
    const Summary on = SummarizeField(runs, [](const Pair& p) { return p.on.expected_hofs; });
    const Summary h_off = SummarizeField(runs, [](const Pair& p) { return 1.0 * p.off.hofs; });
    const Summary h_on = SummarizeField(runs, [](const Pair& p) { return 1.0 * p.on.hofs; });
    const Summary a_off = SummarizeField(
        runs, [](const Pair& p) { return 1.0 * p.off.handover_attempts; });
    const Summary a_on = SummarizeField(
        runs, [](const Pair& p) { return 1.0 * p.on.handover_attempts; });
    const double reduction = off.mean > 0.0 ? 100.0 * (1.0 - on.mean / off.mean) : 0.0;
    r.rows.push_back({v, v * kKmh, off.mean, off.ci95, on.mean, on.ci95,
                      h_off.mean, h_on.mean, a_off.mean, a_on.mean, reduction});
  }
  return r;
}

ExperimentResult RateVsDistance(const ScenarioConfig& cfg) {
  ExperimentResult r;
  r.columns = {"distance_m", "theta_hat_rad", "tx_dbm", "rate_los_gbps",
               "rate_nlos_gbps"};
  const double pc = BeamCoverageProbability(cfg.n_beams, cfg.Beamwidth());
  const double th = cfg.Beamwidth();
  std::vector<double> thetas;
  for (int i = 1; i <= 5; ++i) thetas.push_back(th + (kPi - th) * i / 6.0);
  for (double tx : cfg.sbs_powers_dbm) {
    const LinkBudget los = cfg.MmwBudget(tx, true);
    const LinkBudget nlos = cfg.MmwBudget(tx, false);
    for (int d = 5; d <= 50; d += 5) {
      for (double t : thetas) {
        const BeamCrossing c{static_cast<double>(d), t, th, pc};
        r.rows.push_back({static_cast<double>(d), t, tx,
                          AverageCachingRate(c, los, cfg.MmwParams(true)) / 1e9,
                          AverageCachingRate(c, nlos, cfg.MmwParams(false)) / 1e9});
      }
    }
  }
  return r;
}

std::vector<FocalOutcome> FocalRuns(const ScenarioConfig& cfg, int users,
                                    double speed, int reps, int threads) {
  return Replicate<FocalOutcome>(reps, threads, [&](int rep) {
    return EvaluateFocal(
        BuildFocalInstance(cfg, users, speed, ReplicationSeed(cfg.seed, rep)));
  });
}

ExperimentResult HofMultiuser(const ScenarioConfig& cfg, int reps, int threads) {
  ExperimentResult r;
  r.columns = {"speed_mps", "hof_conventional", "hof_conventional_ci95",
               "hof_proposed", "hof_proposed_ci95"};
  for (int v = 1; v <= 16; ++v) {
    const auto runs = FocalRuns(cfg, cfg.n_mues, v, reps, threads);
    const Summary c = SummarizeField(runs, [](const FocalOutcome& o) { return o.hof_conventional; });
    const Summary p = SummarizeField(runs, [](const FocalOutcome& o) { return o.hof_proposed; });
    r.rows.push_back({static_cast<double>(v), c.mean, c.ci95, p.mean, p.ci95});
  }
  return r;
}

ExperimentResult LoadVsUsers(const ScenarioConfig& cfg, int reps, int threads) {
  ExperimentResult r;
  r.columns = {"users", "speed_mps", "load_mues", "load_ci95"};
  for (double v : TrendSpeeds()) {
    for (double u : UserSweep()) {
      const auto runs = FocalRuns(cfg, static_cast<int>(u), v, reps, threads);
      const Summary l = SummarizeField(runs, [](const FocalOutcome& o) { return o.load; });
      r.rows.push_back({u, v, l.mean, l.ci95});
    }
  }
  return r;
}

ExperimentResult EnergyVsUsers(const ScenarioConfig& cfg, int reps, int threads) {
  ExperimentResult r;
  r.columns = {"users", "speed_mps", "baseline_mj", "saved_mj", "saved_ci95_mj",
               "savings_pct"};
  const double es_mj = cfg.energy.energy_per_scan * 1e3;
  for (double v : TrendSpeeds()) {
    for (double u : UserSweep()) {
      const auto runs = FocalRuns(cfg, static_cast<int>(u), v, reps, threads);
      const Summary s = SummarizeField(
          runs, [&](const FocalOutcome& o) { return o.cache_users * es_mj; });
      const double baseline = u * es_mj;
      r.rows.push_back({u, v, baseline, s.mean, s.ci95, 100.0 * s.mean / baseline});
    }
  }
  return r;
}

ExperimentResult OverheadVsUsers(const ScenarioConfig& cfg, int reps, int threads) {
  ExperimentResult r;
  r.columns = {"users", "speed_mps", "proposals_focal", "proposals_focal_ci95",
               "proposals_total", "proposals_focal_max"};
  for (double v : TrendSpeeds()) {
    for (double u : UserSweep()) {
      const auto runs = FocalRuns(cfg, static_cast<int>(u), v, reps, threads);
      const Summary f = SummarizeField(runs, [](const FocalOutcome& o) { return o.proposals_focal; });
      const Summary t = SummarizeField(runs, [](const FocalOutcome& o) { return o.proposals_total; });
      double mx = 0.0;
      for (const auto& o : runs) mx = std::max(mx, o.proposals_focal);
      r.rows.push_back({u, v, f.mean, f.ci95, t.mean, mx});
    }
  }
  return r;
}

}  // namespace

double ExperimentResult::At(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("no column " + column);
  return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

void ExperimentResult::WriteCsv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? "," : "") << columns[i];
  }
  os << '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

const std::vector<std::string>& ExperimentNames() {
  static const std::vector<std::string> names = {
      "hof_vs_speed",  "rate_vs_distance", "hof_multiuser",
      "load_vs_users", "energy_vs_users",  "overhead_vs_users"};
  return names;
}

ExperimentResult RunExperiment(const std::string& name,
                               const ScenarioConfig& config,
                               const RunOptions& options) {
  config.Validate();
  const int reps = options.replications > 0 ? options.replications
                                            : config.replications;
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult r;
  if (name == "hof_vs_speed") {
    r = HofVsSpeed(config, reps, options.threads);
  } else if (name == "rate_vs_distance") {
    r = RateVsDistance(config);
  } else if (name == "hof_multiuser") {
    r = HofMultiuser(config, reps, options.threads);
  } else if (name == "load_vs_users") {
    r = LoadVsUsers(config, reps, options.threads);
  } else if (name == "energy_vs_users") {
    r = EnergyVsUsers(config, reps, options.threads);
  } else if (name == "overhead_vs_users") {
    r = OverheadVsUsers(config, reps, options.threads);
  } else {
    throw std::invalid_argument("unknown experiment '" + name + "'");
  }
  r.name = name;
  r.seed = config.seed;
  r.replications = name == "rate_vs_distance" ? 1 : reps;
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

TrajectoryStats SimulateTrajectory(const Scenario& s, const ScenarioConfig& cfg,
                                   const MueSite& mue, bool caching,
                                   double duration, double dt,
                                   std::vector<HandoverEvent>* events) {
  const int n_sbs = static_cast<int>(s.sbss.size());
  HandoverConfig hc = cfg.handover;
  hc.caching = caching;
  HandoverMachine machine(0, n_sbs + 1, hc);

  std::vector<LinkBudget> budgets;
  std::vector<BeamGeometry> beams;
  for (int k = 0; k < n_sbs; ++k) {
    budgets.push_back(cfg.MmwBudget(s.sbss[k].power_dbm, true));
    beams.push_back(s.Beams(k, cfg.n_beams, cfg.Beamwidth()));
  }
  const ChannelParams mmw = cfg.MmwParams(true);
  const double r0 = cfg.reference_distance;
  const double thr = hc.rss_threshold_dbm;

  CacheState cache;
  cache.segment_size_bits = cfg.segment_bits;
  cache.play_rate = cfg.play_rate;
  cache.capacity = cfg.cache_capacity;
  if (caching) cache.segments = std::min(cfg.cache_segments, cfg.cache_capacity);

  TrajectoryStats st;
  const Vec2 dir = Vec2::FromPolar(1.0, mue.heading);
  std::vector<Measurement> meas;
  const int steps = static_cast<int>(std::llround(duration / dt));
  for (int i = 0; i < steps; ++i) {
    const Vec2 p = mue.position + (mue.speed * dt * i) * dir;
    meas.clear();
    for (int k = 0; k < n_sbs; ++k) {
      const double d = (p - s.sbss[k].position).Norm();
      if (d > 2.0 * s.sbss[k].radius) continue;
      const double rss = thr + 10.0 * cfg.uw_alpha *
                                   std::log10(s.sbss[k].radius / std::max(d, r0));
      meas.push_back({k + 1, rss});
    }
    StepOutput out = machine.Step(meas, dt, caching ? &cache : nullptr);
    for (const auto& e : out.events) {
      if (e.type == EventType::kCellExit) ++st.cells_entered;
    }
    for (const auto& h : out.hofs) {
      ++st.handover_attempts;
      if (h.failed) ++st.hofs;
      st.expected_hofs +=
          HofProbability(mue.speed, hc.t_mts, s.sbss[h.cell - 1].radius);
    }
    if (events) events->insert(events->end(), out.events.begin(), out.events.end());

    if (!caching) continue;
    const HandoverState& hs = machine.state();
    if (hs.phase == Phase::kSbsAttached && hs.serving && *hs.serving != kMbsId) {
      const int k = *hs.serving - 1;
      const double d = (p - s.sbss[k].position).Norm();
      if (d <= s.sbss[k].radius && d >= r0 && beams[k].InAnySector(p)) {
        const double before = cache.segments;
        cache = CacheFill(InstantaneousRate(d, budgets[k], mmw), dt, cache);
        st.cached_segments += cache.segments - before;
      }
    } else if (hs.phase == Phase::kCoasting) {
      const DrainResult dr = CacheDrain(cache, dt);
      cache = dr.state;
      st.stall_seconds += dr.stall_seconds;
    }
  }
  st.scans = machine.scan_count();
  return st;
}

FocalInstance BuildFocalInstance(const ScenarioConfig& cfg, int n_mues,
                                 double speed, std::uint64_t seed) {
  if (n_mues < 1) throw DomainError("need at least one MUE");
  if (!(speed > 0.0)) throw DomainError("speed must be positive");
  FocalInstance fi;
  ScenarioConfig c = cfg;
  c.n_mues = 0;
  fi.scenario = GenerateScenario(c, seed);
  const Scenario& s = fi.scenario;
  const int n_sbs = static_cast<int>(s.sbss.size());
  for (int k = 1; k < n_sbs; ++k) {
    if (s.sbss[k].position.Norm() < s.sbss[fi.focal].position.Norm()) fi.focal = k;
  }

  GameInstance& g = fi.game;
  g.epsilon = cfg.epsilon;
  g.t_mts = cfg.handover.t_mts;
  g.play_rate = cfg.play_rate;
  for (const auto& site : s.sbss) g.sbss.push_back({site.radius, cfg.quota});

  const SbsSite& f = s.sbss[fi.focal];
  const CellDisk area{{0.0, 0.0}, cfg.area_radius};
  Rng rng = Rng::ForStream(seed, 2);
  for (int u = 0; u < n_mues; ++u) {
    const double phi = rng.Uniform(0.0, kTwoPi);
    const double off = rng.Uniform(-0.5 * kPi, 0.5 * kPi);
    const Vec2 p = f.position + Vec2::FromPolar(f.radius, phi);
    const Vec2 d = Vec2::FromPolar(1.0, phi + kPi + off);
    const auto next = NextCellOnRay(s, p, d, 0.0, fi.focal);
    double reach = 0.0;
    if (next) {
      reach = next->t_in;
    } else {
      const auto iv = RayDiskInterval(p, d, area);
      reach = iv ? iv->second : 0.0;
    }
    MueSpec m;
    m.speed = speed;
    m.cache_segments = cfg.cache_segments;
    m.p_th = cfg.p_th;
    m.scan_interval = std::max(reach / speed, 1e-9);
    m.first_candidates = {fi.focal};
    if (next) m.second_candidates = {next->sbs};
    g.mues.push_back(m);
    fi.reach_s.push_back(m.scan_interval);
  }
  g.Validate();
  return fi;
}

FocalOutcome EvaluateFocal(const FocalInstance& inst) {
  const GameInstance& g = inst.game;
  const DynamicMatching m = DynamicMatch(g);
  FocalOutcome o;
  const double t = g.t_mts;
  for (int u = 0; u < static_cast<int>(g.mues.size()); ++u) {
    const MueSpec& mu = g.mues[u];
    const Slot s1 = RealizedSlot(g, m, u, 1);
    const Slot s2 = RealizedSlot(g, m, u, 2);
    if (s1.IsSbs() && s1.sbs == inst.focal) o.load += 1.0;
    if (s1.IsSelf()) o.cache_users += 1.0;
    const double h1 = s1.IsSbs() ? HofProbability(mu.speed, t, g.sbss[s1.sbs].radius) : 0.0;
    const double h2 = s2.IsSbs() ? HofProbability(mu.speed, t, g.sbss[s2.sbs].radius) : 0.0;
    o.hof_proposed += 1.0 - (1.0 - h1) * (1.0 - h2);
    const double c1 = HofProbability(mu.speed, t, g.sbss[inst.focal].radius);
    const double c2 = mu.second_candidates.empty()
                          ? 0.0
                          : HofProbability(mu.speed, t,
                                           g.sbss[mu.second_candidates[0]].radius);
    o.hof_conventional += 1.0 - (1.0 - c1) * (1.0 - c2);
  }
  const double n = static_cast<double>(g.mues.size());
  o.hof_proposed /= n;
  o.hof_conventional /= n;
  o.proposals_focal = m.proposals_per_sbs[inst.focal];
  o.proposals_total = m.TotalProposals();
  return o;
}

}  // namespace mmw
