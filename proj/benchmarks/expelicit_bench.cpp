// Copyright 2026 The Expelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>

#include <benchmark/benchmark.h>

#include "expelicit/distributions.hpp"
#include "expelicit/elicitation_run.hpp"
#include "expelicit/respondent_sim.hpp"
#include "expelicit/rng.hpp"
#include "expelicit/stats.hpp"
#include "expelicit/task_domain.hpp"

namespace expelicit {
namespace {

// Full 18-outcome run with a deterministic respondent.
void BM_FullBisectionRun(benchmark::State& state) {
  const auto kind = static_cast<ProtocolKind>(state.range(0));
  const OutcomeSpace space;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    RunConfig cfg;
    cfg.protocol = Protocol::make(kind);
    cfg.seed = seed;
    ElicitationRun run(cfg, "bench", ElicitationRun::fixed_clock(""));
    SimulatedRespondent who(sample_ground_truth(UtilityFamily::kLinear, space, seed),
                            BiasModel::none(), ResponseModel::deterministic(), seed);
    benchmark::DoNotOptimize(run_protocol(run, who));
    ++seed;
  }
}
BENCHMARK(BM_FullBisectionRun)
    ->Arg(static_cast<int>(ProtocolKind::kConceptual))
    ->Arg(static_cast<int>(ProtocolKind::kExperiential))
    ->Unit(benchmark::kMillisecond);

SampleMatrix random_sample(std::mt19937_64& rng, int rows) {
  std::uniform_real_distribution<double> u;
  SampleMatrix m;
  m.columns = OutcomeSpace{}.enumerate();
  m.values.resize(rows, 18);
  for (int i = 0; i < m.values.size(); ++i) m.values.data()[i] = u(rng);
  return m;
}

void BM_HotellingT2(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const SampleMatrix a = random_sample(rng, 13);
  const SampleMatrix b = random_sample(rng, 8);
  for (auto _ : state) benchmark::DoNotOptimize(hotelling_t2(a, b));
}
BENCHMARK(BM_HotellingT2);

void BM_GenerateToolbar(benchmark::State& state) {
  const Vocabulary vocab = Vocabulary::standard();
  const Outcome o{0, static_cast<int>(state.range(0)), 2};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const HighlightGoal goal = generate_goal(vocab, 4, seed);
    benchmark::DoNotOptimize(generate_toolbar(o, goal, vocab, seed + 1));
    ++seed;
  }
}
BENCHMARK(BM_GenerateToolbar)->Arg(1)->Arg(5)->Arg(10);

void BM_IncompleteBeta(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist::incomplete_beta(8.0, 2.0, x));
    x = x < 0.98 ? x + 0.01 : 0.01;
  }
}
BENCHMARK(BM_IncompleteBeta);

}  // namespace
}  // namespace expelicit

BENCHMARK_MAIN();
