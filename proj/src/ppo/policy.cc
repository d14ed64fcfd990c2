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


#include "ibrl/ppo/policy.h"

#include <cmath>
#include <stdexcept>

namespace ibrl {

std::vector<double> ObservationInput(const MdpObservation& obs) {
  const auto v = obs.ToVector();
  return std::vector<double>(v.begin(), v.end());
}

std::vector<double> ActionProbabilities(const Mlp& actor, const MdpObservation& obs) {
  const std::vector<double> logits = actor.ForwardEval(ObservationInput(obs));
  std::vector<double> probs(logits.size());
  FlooredSoftmax(logits.data(), static_cast<int>(logits.size()), probs.data());
  return probs;
}

int GreedyAction(const std::vector<double>& probs) {
  int best = 0;
  for (size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = static_cast<int>(i);
  }
  return best;
}

int SampleAction(const std::vector<double>& probs, Rng& rng) {
  const double u = rng.Uniform();
  double acc = 0.0;
  for (size_t i = 0; i + 1 < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

FixedStrategy::FixedStrategy(int eta) : eta_(eta) {
  if (eta != 0 && eta != 1) throw std::invalid_argument("fixed eta must be 0 or 1");
}

BernoulliStrategy::BernoulliStrategy(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli p must lie in [0, 1]");
}

int ActorStrategy::Act(const MdpObservation& obs, Rng& rng) const {
  const std::vector<double> probs = ActionProbabilities(actor_, obs);
  return greedy_ ? GreedyAction(probs) : SampleAction(probs, rng);
}

EpisodeOutcome RunEpisode(const MarketConfig& config, const Strategy& strategy, uint64_t seed,
                          bool keep_trace) {
  Environment env(config);
  env.set_record_trace(keep_trace);
  MdpObservation obs = env.Reset(seed);
  Rng policy_rng(DeriveSeed(seed, 1));
  EpisodeOutcome outcome;
  outcome.seed = seed;
  outcome.etas.reserve(config.horizon);
  while (!env.done()) {
    const int eta = strategy.Act(obs, policy_rng);
    StepResult r = env.Step(eta);
    outcome.cumulative_reward += r.reward;
    outcome.etas.push_back(eta);
    obs = r.observation;
  }
  if (keep_trace) outcome.trace = env.TakeTrace();
  return outcome;
}

EvalSummary Evaluate(const MarketConfig& config, const Strategy& strategy,
                     const std::vector<uint64_t>& seeds) {
  EvalSummary s;
  for (uint64_t seed : seeds) {
    EpisodeOutcome o = RunEpisode(config, strategy, seed, false);
    s.returns.push_back(o.cumulative_reward);
    s.etas.insert(s.etas.end(), o.etas.begin(), o.etas.end());
  }
  if (s.returns.empty()) return s;
  for (double r : s.returns) s.mean += r;
  s.mean /= static_cast<double>(s.returns.size());
  if (s.returns.size() > 1) {
    double ss = 0.0;
    for (double r : s.returns) ss += (r - s.mean) * (r - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.returns.size() - 1));
  }
  return s;
}

std::vector<uint64_t> EvaluationSeeds(uint64_t base, int count) {
  std::vector<uint64_t> seeds;
  for (int k = 0; k < count; ++k) seeds.push_back(DeriveSeed(base, 1000 + static_cast<uint64_t>(k)));
  return seeds;
}

}  // namespace ibrl
