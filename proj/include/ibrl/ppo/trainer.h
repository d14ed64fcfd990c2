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


#ifndef IBRL_PPO_TRAINER_H_
#define IBRL_PPO_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ibrl/common/rng.h"
#include "ibrl/env/environment.h"
#include "ibrl/ppo/adam.h"
#include "ibrl/ppo/mlp.h"
#include "ibrl/ppo/objective.h"

namespace ibrl {

struct PpoConfig {
  double gamma = 0.99;
  double tau = 0.95;
  PpoLossConfig loss;
  int epochs = 3;
  int minibatch = 100;
  AdamConfig adam;
  std::vector<int> hidden = {64, 64};
  double bn_momentum = 0.1;
  double bn_epsilon = 1e-5;
  double actor_output_gain = 0.01;
  // Smoothing of the running return mean/variance used to scale critic
  // targets, applied once per rollout.
  double return_momentum = 0.1;
  int episodes = 1000;
  int eval_every = 50;
  int eval_episodes = 5;
  int instances = 4;
  uint64_t seed = 1;
  uint64_t eval_seed = 7;

  void Validate() const;
};

struct CurvePoint {
  int episode = 0;
  int instance = 0;
  double eval_mean = 0.0;
  double eval_std = 0.0;
};

// Running location/scale of discounted returns. The critic regresses on
// standardised returns; values are mapped back before advantages are built.
struct ReturnScaler {
  double mean = 0.0;
  double var = 1.0;
  bool initialized = false;

  void Update(const std::vector<double>& returns, double momentum);
  double scale() const;
};

// Everything needed to continue training bit-exactly.
struct AgentState {
  int instance = 0;
  uint64_t instance_seed = 0;
  int episodes_done = 0;
  Mlp actor;
  Mlp critic;
  Adam actor_opt;
  Adam critic_opt;
  Rng rng;
  ReturnScaler returns;
  std::vector<CurvePoint> curve;
};

struct UpdateStats {
  double objective = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
};

// One PPO instance: stochastic rollouts of a full episode, GAE, then up to
// `epochs` passes of shuffled minibatch Adam updates on separate actor and
// critic networks.
class PpoAgent {
 public:
  PpoAgent(MarketConfig market, PpoConfig config, int instance, Exec exec = Exec::kSerial);
  PpoAgent(MarketConfig market, PpoConfig config, AgentState state, Exec exec = Exec::kSerial);

  // Runs one training episode and its update. Throws DivergenceError on a
  // non-finite objective or parameter.
  UpdateStats TrainEpisode();
  // Greedy evaluation on the shared evaluation seeds; appends to the curve.
  CurvePoint RecordEvaluation();

  const AgentState& state() const { return state_; }
  const PpoConfig& config() const { return config_; }
  const MarketConfig& market() const { return market_; }

 private:
  UpdateStats Update(const std::vector<std::vector<double>>& obs, const std::vector<int>& actions,
                     const std::vector<double>& log_probs, const std::vector<double>& rewards);

  MarketConfig market_;
  PpoConfig config_;
  Exec exec_;
  AgentState state_;
};

struct InstanceResult {
  int instance = 0;
  bool diverged = false;
  std::string error;
  std::vector<CurvePoint> curve;
  double final_eval_mean = 0.0;
  std::string checkpoint;  // empty when nothing was written
};

struct TrainResult {
  std::vector<InstanceResult> instances;
  std::vector<Mlp> actors;  // index = instance; meaningless for diverged ones
  int best_instance = -1;
};

// Trains config.instances agents (in parallel for Exec::kParallel). With a
// non-empty out_dir, writes instance_<k>.json after every evaluation point,
// and when `resume` is set continues from any checkpoint already there.
// A diverged instance is reported and the others continue.
TrainResult TrainInstances(const MarketConfig& market, const PpoConfig& config,
                           const std::string& out_dir, bool resume, Exec exec);

std::string CheckpointName(int instance);

}  // namespace ibrl

#endif  // IBRL_PPO_TRAINER_H_
