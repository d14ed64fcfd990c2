// Copyright 2026 The ibrl Authors.
//
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


// Serial reference paths against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "ibrl/analysis/experiment.h"
#include "ibrl/common/rng.h"
#include "ibrl/explain/shapley.h"
#include "ibrl/ppo/objective.h"
#include "ibrl/ppo/policy.h"

namespace ibrl {
namespace {

Exec ModeOf(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel;
}

void BM_Replicas(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.market.horizon = 200;
  cfg.replicas = 8;
  BernoulliStrategy random(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunExperiment(cfg, random, ModeOf(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_Replicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Shapley(benchmark::State& state) {
  Rng rng(1);
  Mlp actor;
  actor.Initialize(rng, 1.0);
  std::vector<FeatureVector> samples(200, FeatureVector(6));
  for (auto& s : samples) {
    for (auto& v : s) v = rng.Normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExplainActor(actor, samples, samples, ModeOf(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_Shapley)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Gradient(benchmark::State& state) {
  Rng rng(2);
  Mlp actor(MlpShape{6, {64, 64}, 2}), critic(MlpShape{6, {64, 64}, 1});
  actor.Initialize(rng, 0.01);
  critic.Initialize(rng, 1.0);
  PpoBatch batch;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> x(6);
    for (auto& v : x) v = rng.Normal();
    batch.obs.push_back(x);
    batch.actions.push_back(i % 2);
    batch.old_log_prob.push_back(std::log(0.5));
    batch.advantages.push_back(rng.Normal());
    batch.value_targets.push_back(rng.Normal());
  }
  const NormStats as = actor.BatchStats(batch.obs), cs = critic.BatchStats(batch.obs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PpoObjective(actor, critic, batch, PpoLossConfig{}, as, cs, ModeOf(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_Gradient)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond)->UseRealTime();

}  // namespace
}  // namespace ibrl

BENCHMARK_MAIN();
