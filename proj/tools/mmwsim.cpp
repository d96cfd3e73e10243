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

// mmwsim: analytic sweeps, trajectory simulation, matching runs, oracle
// verification and experiment reproduction.
//
// Exit status: 0 success, 1 a requested check failed, 2 bad configuration or
// arguments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmw/config.hpp"
#include "mmw/experiments.hpp"
#include "mmw/matching.hpp"
#include "mmw/oracle.hpp"
#include "mmw/radio.hpp"
#include "mmw/rng.hpp"
#include "mmw/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mmw;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kOutEnv = "MMWSIM_OUT";

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
  std::string out;
  int threads = 1;
  int replications = 0;
};

void AddCommon(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "key = value configuration file");
  app->add_option("--seed", c.seed, "random seed (overrides the config)");
  app->add_option("--set", c.sets, "key=value override, repeatable");
  app->add_option("--out", c.out, "output directory (default $MMWSIM_OUT or .)");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--replications", c.replications,
                  "replications per sweep point (0 = config value)")
      ->check(CLI::NonNegativeNumber);
}

Config LoadRawConfig(const Common& c) {
  Config cfg = c.config_path.empty() ? Config() : Config::Load(c.config_path);
  for (const auto& s : c.sets) cfg.ApplyOverride(s);
  if (c.seed) cfg.Set("seed", std::to_string(*c.seed));
  return cfg;
}

ScenarioConfig LoadConfig(const Common& c, bool seed_required) {
  const Config raw = LoadRawConfig(c);
  if (seed_required && !raw.Has("seed")) {
    throw ConfigError("arguments", 0, "seed",
                      "a seed is required (--seed or 'seed' in the config)");
  }
  ScenarioConfig s = ScenarioConfig::FromConfig(raw);
  if (c.replications > 0) s.replications = c.replications;
  return s;
}

fs::path OutDir(const Common& c) {
  fs::path p = c.out;
  if (p.empty()) {
    const char* env = std::getenv(kOutEnv);
    p = env ? env : ".";
  }
  fs::create_directories(p);
  return p;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// ---- analyze -----------------------------------------------------------

struct AnalyzeArgs {
  std::string op = "all";
  std::optional<int> n;
  std::optional<double> theta;
  double distance = 20.0;
  double theta_hat = kPi / 2.0;
  std::string speed = "60kmh";
  double radius = 30.0;
  std::optional<double> t0;
};

std::string CoverageCsv(const std::vector<std::pair<int, double>>& pts) {
  std::string s = "n_beams,beamwidth_rad,coverage_probability\n";
  for (auto [n, th] : pts) {
    s += std::to_string(n) + "," + Num(th) + "," +
         Num(BeamCoverageProbability(n, th)) + "\n";
  }
  return s;
}

BeamGeometry OriginBeam(int n, double theta) {
  BeamGeometry b{{0.0, 0.0}, n, theta, theta};  // entry edge along +x
  b.Validate();
  return b;
}

std::string CdfCsv(const std::vector<double>& distances, int n, double theta,
                   double speed, const std::vector<double>& times) {
  std::string s = "distance_m,speed_mps,t_s,cdf\n";
  const BeamGeometry beam = OriginBeam(n, theta);
  for (double r : distances) {
    const Pose pose = EntryEdgePose(beam, r, theta + 0.5 * kPi, speed);
    for (double t : times) {
      s += Num(r) + "," + Num(speed) + "," + Num(t) + "," +
           Num(CachingDurationCdf(pose, beam, t)) + "\n";
    }
  }
  return s;
}

std::string RateCsv(const ScenarioConfig& cfg, double distance, double theta_hat) {
  std::string s = "distance_m,theta_hat_rad,tx_dbm,rate_los_gbps,rate_nlos_gbps\n";
  const double th = cfg.Beamwidth();
  const BeamCrossing c{distance, theta_hat, th,
                       BeamCoverageProbability(cfg.n_beams, th)};
  for (double tx : cfg.sbs_powers_dbm) {
    s += Num(distance) + "," + Num(theta_hat) + "," + Num(tx) + "," +
         Num(AverageCachingRate(c, cfg.MmwBudget(tx, true), cfg.MmwParams(true)) / 1e9) +
         "," +
         Num(AverageCachingRate(c, cfg.MmwBudget(tx, false), cfg.MmwParams(false)) / 1e9) +
         "\n";
  }
  return s;
}

std::string HofCsv(const std::vector<double>& speeds,
                   const std::vector<double>& radii, double t_mts) {
  std::string s = "speed_mps,radius_m,t_mts_s,hof_probability,clamped\n";
  for (double a : radii) {
    for (double v : speeds) {
      const HofEvaluation h = EvaluateHofProbability(v, t_mts, a);
      s += Num(v) + "," + Num(a) + "," + Num(t_mts) + "," + Num(h.probability) +
           "," + (h.clamped ? "1" : "0") + "\n";
    }
  }
  return s;
}

int RunAnalyze(const Common& c, const AnalyzeArgs& a) {
  const ScenarioConfig cfg = LoadConfig(c, false);
  const int n = a.n.value_or(cfg.n_beams);
  const double theta = a.theta.value_or(cfg.Beamwidth());
  const double speed = ParseSpeed(a.speed);
  if (a.op == "coverage") {
    std::cout << CoverageCsv({{n, theta}});
  } else if (a.op == "cdf") {
    std::vector<double> times;
    if (a.t0) {
      times = {*a.t0};
    } else {
      for (int i = 0; i <= 40; ++i) times.push_back(0.05 * i);
    }
    std::cout << CdfCsv({a.distance}, n, theta, speed, times);
  } else if (a.op == "rate") {
    std::cout << RateCsv(cfg, a.distance, a.theta_hat);
  } else if (a.op == "hof") {
    std::cout << HofCsv({speed}, {a.radius}, cfg.handover.t_mts);
  } else if (a.op == "all") {
    const fs::path out = OutDir(c);
    std::vector<std::pair<int, double>> pts;
    for (int nn = 2; nn <= 6; ++nn) {
      for (int i = 1; i <= 5; ++i) pts.push_back({nn, kTwoPi / nn * i / 5.0});
    }
    WriteFile(out / "coverage.csv", CoverageCsv(pts));
    std::vector<double> times;
    for (int i = 0; i <= 100; ++i) times.push_back(0.02 * i);
    WriteFile(out / "caching_cdf.csv", CdfCsv({10, 20, 40}, n, theta, speed, times));
    std::ostringstream rate;
    RunExperiment("rate_vs_distance", cfg).WriteCsv(rate);
    WriteFile(out / "caching_rate.csv", rate.str());
    std::vector<double> speeds;
    for (int v = 1; v <= 16; ++v) speeds.push_back(v);
    WriteFile(out / "hof.csv", HofCsv(speeds, {20, 30, 50}, cfg.handover.t_mts));
    std::cout << "wrote coverage.csv caching_cdf.csv caching_rate.csv hof.csv to "
              << out.string() << "\n";
  } else {
    throw ConfigError("arguments", 0, "op", "unknown analysis '" + a.op + "'");
  }
  return kExitOk;
}

// ---- simulate ----------------------------------------------------------

int RunSimulate(const Common& c, bool caching, double dt) {
  const ScenarioConfig cfg = LoadConfig(c, true);
  const fs::path out = OutDir(c);
  const Scenario s = GenerateScenario(cfg, cfg.seed);
  WriteFile(out / "scenario.json", s.ToJson());
  std::vector<HandoverEvent> all;
  std::ostringstream summary;
  summary << "mue,speed_mps,cells_exited,handover_attempts,hofs,expected_hofs,"
             "scans,cached_segments,stall_s\n";
  for (int u = 0; u < static_cast<int>(s.mues.size()); ++u) {
    std::vector<HandoverEvent> ev;
    const TrajectoryStats st =
        SimulateTrajectory(s, cfg, s.mues[u], caching, cfg.frame, dt, &ev);
    for (auto& e : ev) e.mue = u;
    all.insert(all.end(), ev.begin(), ev.end());
    summary << u << ',' << Num(s.mues[u].speed) << ',' << st.cells_entered << ','
            << st.handover_attempts << ',' << st.hofs << ','
            << Num(st.expected_hofs) << ',' << st.scans << ','
            << Num(st.cached_segments) << ',' << Num(st.stall_seconds) << '\n';
  }
  std::ofstream events(out / "events.csv", std::ios::binary);
  WriteEventsCsv(events, all);
  WriteFile(out / "trajectories.csv", summary.str());
  std::cout << "simulated " << s.mues.size() << " MUEs over " << cfg.frame
            << " s; wrote scenario.json events.csv trajectories.csv to "
            << out.string() << "\n";
  return kExitOk;
}

// ---- match -------------------------------------------------------------

struct MatchArgs {
  bool example = false;
  bool variant = false;
  int users = 20;
  std::string speed = "8";
};

int RunMatch(const Common& c, const MatchArgs& a) {
  const ScenarioConfig cfg = LoadConfig(c, true);
  GameInstance g;
  if (a.example) {
    g = TwoUserTwoCellInstance(!a.variant);
  } else {
    g = BuildFocalInstance(cfg, a.users, ParseSpeed(a.speed), cfg.seed).game;
  }
  std::ostringstream os;
  const Profiles p = BuildPreferences(g);
  os << "# preference profiles\n";
  for (int u = 0; u < static_cast<int>(g.mues.size()); ++u) {
    os << "u" << u + 1 << ":";
    for (const auto& rp : p.mue[u]) os << ' ' << PlanLabel(rp.plan, u);
    os << '\n';
  }
  const SinglePeriodMatching sp = DeferredAcceptance(g);
  const auto sp_block = FindSinglePeriodBlockingPairs(sp, g);
  os << "# single-period deferred acceptance\n";
  for (int u = 0; u < static_cast<int>(g.mues.size()); ++u) {
    os << "u" << u + 1 << " -> " << SlotLabel(sp.assignment[u], u) << '\n';
  }
  os << "blocking pairs: " << sp_block.size() << '\n';
  const DynamicMatching m = DynamicMatch(g, p);
  os << "# two-stage dynamic matching\n";
  for (int u = 0; u < static_cast<int>(g.mues.size()); ++u) {
    os << "u" << u + 1 << " -> " << PlanLabel(m.plan[u], u) << " realized "
       << SlotLabel(RealizedSlot(g, m, u, 1), u) << ' '
       << SlotLabel(RealizedSlot(g, m, u, 2), u) << '\n';
  }
  os << "proposals: " << m.TotalProposals() << " stage-2 moves: " << m.stage2_moves
     << '\n';
  const BlockingReport report = ScanAllBlockings(m, g);
  os << "# stability scan\n" << report.Text();
  const bool ok = sp_block.empty() && report.Stable();
  os << (ok ? "PASS" : "FAIL") << " stability\n";
  const fs::path out = OutDir(c);
  WriteFile(out / "match_trace.txt", os.str());
  std::cout << os.str();
  return ok ? kExitOk : kExitCheckFailed;
}

// ---- verify ------------------------------------------------------------

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Check> VerifyCoverage(std::uint64_t seed, int threads) {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int i = 1; i <= 5; ++i) {
      const double th = kTwoPi / n * i / 5.0;
      const McEstimate e = McCoverageProbability(n, th, 20000, seed, threads);
      worst = std::max(worst, std::abs(e.mean - BeamCoverageProbability(n, th)));
    }
  }
  return {{"coverage", worst < 0.02, "max |closed - mc| = " + Num(worst)}};
}

std::vector<Check> VerifyCdf(std::uint64_t seed, int threads) {
  double worst = 0.0;
  const double th = 10.0 * kPi / 180.0;
  const BeamGeometry beam = OriginBeam(3, th);
  for (double r : {10.0, 20.0, 40.0}) {
    const Pose pose = EntryEdgePose(beam, r, th + 0.5 * kPi, 16.0);
    const auto xs = McCachingDurations(pose, beam, 20000, seed, threads);
    worst = std::max(worst, KsDistance(xs, [&](double t) {
      return CachingDurationCdf(pose, beam, t);
    }));
  }
  return {{"caching_cdf", worst < 0.03, "max KS = " + Num(worst)}};
}

std::vector<Check> VerifyRate(std::uint64_t seed) {
  Rng rng(seed);
  const ChannelParams los = ChannelParams::MmwLos();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double th = rng.Uniform(0.02, 0.5);
    const BeamCrossing c{rng.Uniform(2.0, 100.0), rng.Uniform(th + 0.01, kPi - 0.01),
                         th, 1.0};
    const LinkBudget b = LinkBudget::Make(rng.Uniform(10.0, 35.0), AntennaPattern{},
                                          5e9, -174.0, los);
    const double closed = AverageCachingRate(c, b, los);
    const double quad = QuadratureRate(c, b, los, 1e-6 * closed).value;
    worst = std::max(worst, std::abs(closed - quad) / quad);
  }
  return {{"caching_rate", worst < 1e-6, "max relative gap = " + Num(worst)}};
}

std::vector<Check> VerifyHof(std::uint64_t seed, int threads) {
  double worst = 0.0;
  for (double v : {4.0, 8.0, 16.0}) {
    const McEstimate e = McHofFrequency(v, 1.0, 30.0, 20000, seed, threads);
    worst = std::max(worst, std::abs(e.mean - HofProbability(v, 1.0, 30.0)));
  }
  return {{"hof", worst < 0.02, "max |formula - mc| = " + Num(worst)}};
}

std::vector<Check> VerifyStability(std::uint64_t seed, int instances) {
  int p1 = 0, p2 = 0, sp = 0;
  for (int i = 0; i < instances; ++i) {
    const GameInstance g = RandomGameInstance(Rng::ForStream(seed, i).NextU64());
    const BlockingReport r = ScanAllBlockings(DynamicMatch(g), g);
    p1 += !r.period1.empty();
    p2 += !r.period2.empty();
    sp += !FindSinglePeriodBlockingPairs(DeferredAcceptance(g), g).empty();
  }
  const std::string n = " of " + std::to_string(instances);
  return {{"stability_single_period", sp == 0, std::to_string(sp) + n + " blocked"},
          {"stability_period1", p1 == 0, std::to_string(p1) + n + " blocked"},
          {"stability_period2", p2 == 0, std::to_string(p2) + n + " blocked"}};
}

std::vector<Check> VerifyIlp(std::uint64_t seed, int instances) {
  int infeasible = 0, below = 0, gap = 0;
  for (int i = 0; i < instances; ++i) {
    RandomGameOptions o;
    o.max_mues = 6;
    o.max_sbs = 3;
    const GameInstance g = RandomGameInstance(Rng::ForStream(seed, i).NextU64(), o);
    const IlpInstance ilp = IlpInstance::FromGame(g);
    const IlpSolution best = SolveOffloadBruteforce(ilp);
    const auto choice = AssignmentFromMatching(g, DynamicMatch(g));
    infeasible += !CheckOffloadConstraints(ilp, choice).ok();
    const int mbs = static_cast<int>(
        std::count(choice.begin(), choice.end(), static_cast<int>(g.sbss.size())));
    below += mbs < best.mbs_count;
    gap += mbs > best.mbs_count;
  }
  return {{"ilp_feasibility", infeasible == 0, std::to_string(infeasible) + " infeasible"},
          {"ilp_bound", below == 0,
           std::to_string(below) + " below the optimum, " + std::to_string(gap) +
               " above (stability gap)"}};
}

int RunVerify(const Common& c, const std::string& suite, int instances) {
  const ScenarioConfig cfg = LoadConfig(c, false);
  const std::uint64_t seed = cfg.seed;
  const int threads = c.threads;
  const bool all = suite == "all";
  const std::vector<std::pair<std::string, std::function<std::vector<Check>()>>> suites = {
      {"coverage", [&] { return VerifyCoverage(seed, threads); }},
      {"cdf", [&] { return VerifyCdf(seed, threads); }},
      {"rate", [&] { return VerifyRate(seed); }},
      {"hof", [&] { return VerifyHof(seed, threads); }},
      {"stability", [&] { return VerifyStability(seed, instances); }},
      {"ilp", [&] { return VerifyIlp(seed, instances); }},
  };
  std::vector<Check> checks;
  bool known = false;
  for (const auto& [name, run] : suites) {
    if (!all && suite != name) continue;
    known = true;
    const std::vector<Check> cs = run();
    checks.insert(checks.end(), cs.begin(), cs.end());
  }
  if (!known) throw ConfigError("arguments", 0, "suite", "unknown suite '" + suite + "'");
  std::ostringstream os;
  bool ok = true;
  for (const auto& ch : checks) {
    os << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": " << ch.detail << '\n';
    ok = ok && ch.pass;
  }
  std::cout << os.str();
  WriteFile(OutDir(c) / "verify_report.txt", os.str());
  return ok ? kExitOk : kExitCheckFailed;
}

// ---- reproduce ---------------------------------------------------------

int RunReproduce(const Common& c, const std::vector<std::string>& only) {
  const Config raw = LoadRawConfig(c);
  const ScenarioConfig cfg = LoadConfig(c, true);
  const fs::path out = OutDir(c);
  RunOptions opt;
  opt.threads = c.threads;
  opt.replications = cfg.replications;
  std::ostringstream manifest;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(raw.Hash()));
  manifest << "tool = mmwsim " << kVersion << "\n"
           << "config_hash = " << hash << "\n"
           << "seed = " << cfg.seed << "\n"
           << "replications = " << cfg.replications << "\n";
  for (const auto& name : only.empty() ? ExperimentNames() : only) {
    const ExperimentResult r = RunExperiment(name, cfg, opt);
    std::ofstream f(out / (name + ".csv"), std::ios::binary);
    r.WriteCsv(f);
    manifest << "experiment = " << name << " rows=" << r.rows.size()
             << " runtime_s=" << Num(r.runtime_s) << "\n";
    std::cout << name << ": " << r.rows.size() << " rows in " << Num(r.runtime_s)
              << " s\n";
  }
  manifest << "config:\n" << raw.Canonical();
  WriteFile(out / "manifest.txt", manifest.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmW/uW mobility, caching and handover-matching toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "closed-form evaluations and sweeps");
  AddCommon(analyze, common);
  analyze->add_option("--op", analyze_args.op, "coverage|cdf|rate|hof|all");
  analyze->add_option("--n", analyze_args.n, "number of beams");
  analyze->add_option("--theta", analyze_args.theta, "beamwidth, rad");
  analyze->add_option("--distance", analyze_args.distance, "SBS distance, m");
  analyze->add_option("--theta-hat", analyze_args.theta_hat, "crossing angle, rad");
  analyze->add_option("--speed", analyze_args.speed, "speed, e.g. 16mps or 60kmh");
  analyze->add_option("--radius", analyze_args.radius, "cell radius, m");
  analyze->add_option("--t0", analyze_args.t0, "caching duration, s");

  bool caching = true;
  double dt = 0.02;
  auto* simulate = app.add_subcommand("simulate", "trajectory and handover simulation");
  AddCommon(simulate, common);
  simulate->add_option("--caching", caching, "enable cache-based scan muting");
  simulate->add_option("--dt", dt, "time step, s")->check(CLI::PositiveNumber);

  MatchArgs match_args;
  auto* match = app.add_subcommand("match", "single matching instance with trace");
  AddCommon(match, common);
  match->add_flag("--example", match_args.example, "two-user two-cell instance");
  match->add_flag("--variant", match_args.variant,
                  "example variant where the MBS refuses period-2 admission");
  match->add_option("--users", match_args.users, "MUEs entering the focal cell")
      ->check(CLI::PositiveNumber);
  match->add_option("--speed", match_args.speed, "MUE speed, e.g. 8 or 30kmh");

  std::string suite = "all";
  int instances = 200;
  auto* verify = app.add_subcommand("verify", "oracle suite with PASS/FAIL summary");
  AddCommon(verify, common);
  verify->add_option("--suite", suite, "coverage|cdf|rate|hof|stability|ilp|all");
  verify->add_option("--instances", instances, "random instances for scans")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> only;
  auto* reproduce = app.add_subcommand("reproduce", "run the figure experiments");
  AddCommon(reproduce, common);
  reproduce->add_option("--only", only, "subset of experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*analyze) return RunAnalyze(common, analyze_args);
    if (*simulate) return RunSimulate(common, caching, dt);
    if (*match) return RunMatch(common, match_args);
    if (*verify) return RunVerify(common, suite, instances);
    if (*reproduce) return RunReproduce(common, only);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PackingError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
