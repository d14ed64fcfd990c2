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


#ifndef IBRL_PPO_POLICY_H_
#define IBRL_PPO_POLICY_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ibrl/common/rng.h"
#include "ibrl/env/environment.h"
#include "ibrl/ppo/mlp.h"

namespace ibrl {

std::vector<double> ObservationInput(const MdpObservation& obs);

// Action probabilities of an actor in evaluation mode (running batch-norm
// statistics).
std::vector<double> ActionProbabilities(const Mlp& actor, const MdpObservation& obs);

// Largest probability; ties go to the lowest action.
int GreedyAction(const std::vector<double>& probs);

// Chooses eta each period. Act must not mutate the strategy so one object
// can serve many concurrent episodes; randomness comes from the caller.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual int Act(const MdpObservation& obs, Rng& rng) const = 0;
  virtual std::string name() const = 0;
};

class FixedStrategy : public Strategy {
 public:
  explicit FixedStrategy(int eta);
  int Act(const MdpObservation&, Rng&) const override { return eta_; }
  std::string name() const override { return eta_ ? "fixed1" : "fixed0"; }

 private:
  int eta_;
};

class BernoulliStrategy : public Strategy {
 public:
  explicit BernoulliStrategy(double p = 0.5);
  int Act(const MdpObservation&, Rng& rng) const override { return rng.Bernoulli(p_) ? 1 : 0; }
  std::string name() const override { return "random"; }

 private:
  double p_;
};

class ActorStrategy : public Strategy {
 public:
  ActorStrategy(Mlp actor, bool greedy) : actor_(std::move(actor)), greedy_(greedy) {}
  int Act(const MdpObservation& obs, Rng& rng) const override;
  std::string name() const override { return "learned"; }
  const Mlp& actor() const { return actor_; }

 private:
  Mlp actor_;
  bool greedy_;
};

// Samples an action from probabilities with one uniform draw.
int SampleAction(const std::vector<double>& probs, Rng& rng);

struct EpisodeOutcome {
  uint64_t seed = 0;
  double cumulative_reward = 0.0;
  std::vector<int> etas;
  EpisodeTrace trace;  // empty unless requested
};

// The environment is reset with `seed` and the strategy draws from its own
// stream derived from the same seed, so two strategies run on one seed
// face identical shock sequences until their actions diverge.
EpisodeOutcome RunEpisode(const MarketConfig& config, const Strategy& strategy, uint64_t seed,
                          bool keep_trace);

struct EvalSummary {
  std::vector<double> returns;
  double mean = 0.0;
  double std = 0.0;  // sample std (n-1); 0 for one episode
  std::vector<int> etas;  // all actions, episode-major
};

EvalSummary Evaluate(const MarketConfig& config, const Strategy& strategy,
                     const std::vector<uint64_t>& seeds);

// Seeds for out-of-sample evaluation: DeriveSeed(base, 1000 + k).
std::vector<uint64_t> EvaluationSeeds(uint64_t base, int count);

}  // namespace ibrl

#endif  // IBRL_PPO_POLICY_H_
