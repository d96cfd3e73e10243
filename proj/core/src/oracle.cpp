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

#include "mmw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mmw/parallel.hpp"
#include "mmw/rng.hpp"

namespace mmw {
namespace {

constexpr std::int64_t kChunk = 1 << 16;

std::size_t ChunkCount(std::int64_t samples) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  return static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
}

std::int64_t ChunkSize(std::int64_t samples, std::size_t c) {
  const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
  return std::min(kChunk, samples - begin);
}

McEstimate Bernoulli(const std::vector<std::int64_t>& hits,
                     std::int64_t samples) {
  std::int64_t total = 0;
  for (auto h : hits) total += h;
  McEstimate e;
  e.samples = samples;
  e.mean = static_cast<double>(total) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(samples));
  return e;
}

bool SbsAllowed(const IlpInstance& inst, const IlpMue& m, int k) {
  if (!m.reachable.empty() &&
      std::find(m.reachable.begin(), m.reachable.end(), k) == m.reachable.end())
    return false;
  return HofProbability(m.speed, inst.t_mts, inst.sbss[k].radius) <= m.p_th;
}

bool CacheAllows(const IlpInstance& inst, const IlpMue& m) {
  return m.cache_segments / inst.play_rate >= m.scan_interval;
}

}  // namespace

IlpInstance IlpInstance::FromGame(const GameInstance& g) {
  IlpInstance inst;
  inst.t_mts = g.t_mts;
  inst.play_rate = g.play_rate;
  for (const auto& m : g.mues) {
    inst.mues.push_back({m.speed, m.cache_segments, m.p_th, m.scan_interval,
                         m.first_candidates});
  }
  for (const auto& s : g.sbss) inst.sbss.push_back({s.radius, s.quota});
  return inst;
}

IlpSolution SolveOffloadBruteforce(const IlpInstance& inst) {
  const int n_u = static_cast<int>(inst.mues.size());
  const int n_k = static_cast<int>(inst.sbss.size());
  const int mbs = n_k;
  const int none = n_k + 1;

  // Size of the full (K+2)^U space, guarded against overflow.
  std::uint64_t space = 1;
  for (int u = 0; u < n_u; ++u) {
    if (space > inst.budget / static_cast<std::uint64_t>(n_k + 2) + 1) {
      space = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    space *= static_cast<std::uint64_t>(n_k + 2);
  }
  if (space > inst.budget) {
    throw std::length_error("ILP enumeration of " + std::to_string(n_u) +
                            " MUEs x " + std::to_string(n_k + 2) +
                            " choices exceeds the budget");
  }

  // Per-MUE admissible choices in ascending order keep the odometer below in
  // lexicographic order, so the first optimum found is the tie winner.
  std::vector<std::vector<int>> options(n_u);
  for (int u = 0; u < n_u; ++u) {
    const auto& m = inst.mues[u];
    for (int k = 0; k < n_k; ++k) {
      if (SbsAllowed(inst, m, k)) options[u].push_back(k);
    }
    options[u].push_back(mbs);
    if (CacheAllows(inst, m)) options[u].push_back(none);
  }

  IlpSolution best;
  best.mbs_count = std::numeric_limits<int>::max();
  std::vector<int> idx(n_u, 0);
  std::vector<int> choice(n_u);
  std::vector<int> load(n_k);
  std::uint64_t evaluated = 0;
  while (true) {
    ++evaluated;
    std::fill(load.begin(), load.end(), 0);
    int mbs_count = 0;
    bool ok = true;
    for (int u = 0; u < n_u && ok; ++u) {
      const int c = options[u][idx[u]];
      choice[u] = c;
      if (c < n_k) {
        ok = ++load[c] <= inst.sbss[c].quota;
      } else if (c == mbs) {
        ++mbs_count;
      }
    }
    if (ok && mbs_count < best.mbs_count) {
      best.mbs_count = mbs_count;
      best.choice = choice;
    }
    int u = n_u - 1;
    while (u >= 0 && ++idx[u] == static_cast<int>(options[u].size())) {
      idx[u] = 0;
      --u;
    }
    if (u < 0) break;
  }
  if (n_u == 0) best.mbs_count = 0;
  best.evaluated = evaluated;
  return best;
}

IlpCheck CheckOffloadConstraints(const IlpInstance& inst,
                                 const std::vector<int>& choice) {
  IlpCheck check;
  const int n_k = static_cast<int>(inst.sbss.size());
  if (choice.size() != inst.mues.size()) {
    check.unique = false;
    return check;
  }
  std::vector<int> load(n_k, 0);
  for (std::size_t u = 0; u < choice.size(); ++u) {
    const int c = choice[u];
    const auto& m = inst.mues[u];
    if (c < 0 || c > n_k + 1) {
      check.unique = false;
    } else if (c < n_k) {
      ++load[c];
      if (!SbsAllowed(inst, m, c)) check.hof = false;
    } else if (c == n_k + 1 && !CacheAllows(inst, m)) {
      check.cache = false;
    }
  }
  for (int k = 0; k < n_k; ++k) {
    if (load[k] > inst.sbss[k].quota) check.quota = false;
  }
  return check;
}

std::vector<int> AssignmentFromMatching(const GameInstance& g,
                                        const DynamicMatching& m) {
  const int n_k = static_cast<int>(g.sbss.size());
  std::vector<int> out(g.mues.size());
  for (std::size_t u = 0; u < g.mues.size(); ++u) {
    const Slot s = RealizedSlot(g, m, static_cast<int>(u), 1);
    out[u] = s.IsSbs() ? s.sbs : (s.IsMbs() ? n_k : n_k + 1);
  }
  return out;
}

McEstimate McCoverageProbability(int n_beams, double beamwidth,
                                 std::int64_t samples, std::uint64_t seed,
                                 int threads) {
  BeamCoverageProbability(n_beams, beamwidth);  // validates the geometry
  const std::size_t chunks = ChunkCount(samples);
  const double s = kTwoPi / n_beams;
  const double gap = s - beamwidth;
  std::vector<std::int64_t> hits(chunks, 0);
  ParallelFor(chunks, threads, [&](std::size_t c) {
    Rng rng = Rng::ForStream(seed, c);
    std::int64_t h = 0;
    const std::int64_t n = ChunkSize(samples, c);
    for (std::int64_t i = 0; i < n; ++i) {
      const double phi = rng.Uniform(0.0, kTwoPi);
      const double heading = rng.Uniform(0.0, kTwoPi);
      const double j = std::floor(phi / s);
      if (phi - j * s >= gap) {
        ++h;
        continue;
      }
      const Vec2 p = Vec2::FromPolar(1.0, phi);
      const Vec2 d = Vec2::FromPolar(1.0, heading);
      const double t = -2.0 * Dot(p, d);
      if (t <= 0.0) continue;  // heading points out of the cell
      double psi = (p + t * d).Angle();
      if (psi < 0.0) psi += kTwoPi;
      const double jj = std::floor(psi / s);
      if (jj != j || psi - jj * s >= gap) ++h;
    }
    hits[c] = h;
  });
  return Bernoulli(hits, samples);
}

std::vector<double> McCachingDurations(const Pose& pose,
                                       const BeamGeometry& beam,
                                       std::int64_t samples, std::uint64_t seed,
                                       int threads) {
  beam.Validate();
  RequireOnEntryEdge(pose, beam);
  if (!(pose.speed > 0.0)) throw DomainError("speed must be positive");
  const auto [lo, hi] = AdmissibleHeadingRange(beam);
  const std::size_t chunks = ChunkCount(samples);
  std::vector<double> out(static_cast<std::size_t>(samples));
  ParallelFor(chunks, threads, [&](std::size_t c) {
    Rng rng = Rng::ForStream(seed, c);
    const std::int64_t n = ChunkSize(samples, c);
    const std::size_t base = c * static_cast<std::size_t>(kChunk);
    for (std::int64_t i = 0; i < n; ++i) {
      double r = 0.0;
      while (true) {
        const double heading = rng.Uniform(lo, hi);
        if (heading <= lo) continue;  // the open end is parallel to the edge
        try {
          r = BeamTraverseDistance(MakePose(pose.position, heading, pose.speed),
                                   beam);
          break;
        } catch (const NoIntersectionError&) {
        }
      }
      out[base + static_cast<std::size_t>(i)] = r / pose.speed;
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

double KsDistance(const std::vector<double>& sorted,
                  const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

McEstimate McHofFrequency(double speed, double t_mts, double radius,
                          std::int64_t samples, std::uint64_t seed,
                          int threads) {
  if (!(speed > 0.0) || !(t_mts > 0.0) || !(radius > 0.0)) {
    throw DomainError("speed, t_mts and radius must be positive");
  }
  const CellDisk disk{{0.0, 0.0}, radius};
  const double threshold = speed * t_mts;
  const std::size_t chunks = ChunkCount(samples);
  std::vector<std::int64_t> hits(chunks, 0);
  ParallelFor(chunks, threads, [&](std::size_t c) {
    Rng rng = Rng::ForStream(seed, c);
    std::int64_t h = 0;
    const std::int64_t n = ChunkSize(samples, c);
    for (std::int64_t i = 0; i < n; ++i) {
      const double phi = rng.Uniform(0.0, kTwoPi);
      const double off = rng.Uniform(-0.5 * kPi, 0.5 * kPi);
      const Vec2 p = Vec2::FromPolar(radius, phi);
      const Vec2 d = Vec2::FromPolar(1.0, phi + kPi + off);
      const auto iv = RayDiskInterval(p, d, disk);
      const double chord = iv ? iv->second - std::max(iv->first, 0.0) : 0.0;
      if (chord < threshold) ++h;
    }
    hits[c] = h;
  });
  return Bernoulli(hits, samples);
}

GameInstance RandomGameInstance(std::uint64_t seed,
                                const RandomGameOptions& o) {
  if (o.max_mues < 1 || o.max_sbs < 1 || o.max_quota < 1) {
    throw DomainError("random instance bounds must be >= 1");
  }
  Rng r(seed);
  GameInstance g;
  g.cross_plans = o.cross_plans;
  const int n_k = 1 + static_cast<int>(r.Index(o.max_sbs));
  const int n_u = 1 + static_cast<int>(r.Index(o.max_mues));
  for (int k = 0; k < n_k; ++k) {
    g.sbss.push_back({r.Uniform(10.0, 50.0), 1 + static_cast<int>(r.Index(o.max_quota))});
  }
  for (int u = 0; u < n_u; ++u) {
    MueSpec m;
    m.speed = r.Uniform(1.0, 16.0);
    m.cache_segments = r.Uniform() < 0.3 ? 0.0 : 1e4 * r.Uniform();
    m.p_th = 0.3 * r.Uniform();
    m.scan_interval = r.Uniform(1.0, 11.0);
    for (int k = 0; k < n_k; ++k) {
      if (r.Uniform() < 0.6) m.first_candidates.push_back(k);
      if (r.Uniform() < 0.5) m.second_candidates.push_back(k);
    }
    g.mues.push_back(m);
  }
  return g;
}

std::string BlockingReport::Text() const {
  std::ostringstream os;
  if (Stable()) {
    os << "stable: no blocking deviations\n";
    return os.str();
  }
  for (const auto& v : period1) os << v.Describe() << '\n';
  for (const auto& v : period2) os << v.Describe() << '\n';
  return os.str();
}

BlockingReport ScanAllBlockings(const DynamicMatching& m,
                                const GameInstance& g) {
  BlockingReport r;
  r.period1 = FindBlockingPairs(m, g, 1);
  r.period2 = FindBlockingPairs(m, g, 2);
  return r;
}

}  // namespace mmw
