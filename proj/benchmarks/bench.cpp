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


#include <benchmark/benchmark.h>

#include "mmw/geometry.hpp"
#include "mmw/matching.hpp"
#include "mmw/oracle.hpp"
#include "mmw/radio.hpp"

namespace {

using namespace mmw;

void BM_CoverageMonteCarlo(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(McCoverageProbability(3, 0.3, state.range(0), ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoverageMonteCarlo)->Arg(1 << 16)->Arg(1 << 20);

void BM_ClosedFormRate(benchmark::State& state) {
  const ChannelParams los = ChannelParams::MmwLos();
  const LinkBudget b = LinkBudget::Make(20.0, AntennaPattern{}, 5e9, -174.0, los);
  const BeamCrossing c{20.0, 1.3, 0.1745, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(AverageCachingRate(c, b, los));
}
BENCHMARK(BM_ClosedFormRate);

void BM_QuadratureRate(benchmark::State& state) {
  const ChannelParams los = ChannelParams::MmwLos();
  const LinkBudget b = LinkBudget::Make(20.0, AntennaPattern{}, 5e9, -174.0, los);
  const BeamCrossing c{20.0, 1.3, 0.1745, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(QuadratureRate(c, b, los, 1.0));
}
BENCHMARK(BM_QuadratureRate);

void BM_DynamicMatch(benchmark::State& state) {
  RandomGameOptions o;
  o.max_mues = static_cast<int>(state.range(0));
  o.max_sbs = 4;
  const GameInstance g = RandomGameInstance(5, o);
  for (auto _ : state) benchmark::DoNotOptimize(DynamicMatch(g));
}
BENCHMARK(BM_DynamicMatch)->Arg(8)->Arg(64);

void BM_StabilityScan(benchmark::State& state) {
  const GameInstance g = RandomGameInstance(5);
  const DynamicMatching m = DynamicMatch(g);
  for (auto _ : state) benchmark::DoNotOptimize(ScanAllBlockings(m, g));
}
BENCHMARK(BM_StabilityScan);

void BM_BruteforceOffload(benchmark::State& state) {
  RandomGameOptions o;
  o.max_mues = 6;
  o.max_sbs = 3;
  const IlpInstance inst = IlpInstance::FromGame(RandomGameInstance(3, o));
  for (auto _ : state) benchmark::DoNotOptimize(SolveOffloadBruteforce(inst));
}
BENCHMARK(BM_BruteforceOffload);

}  // namespace

BENCHMARK_MAIN();
