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


#ifndef IBRL_PPO_OBJECTIVE_H_
#define IBRL_PPO_OBJECTIVE_H_

#include <vector>

#include "ibrl/ppo/mlp.h"

namespace ibrl {

struct PpoLossConfig {
  double clip = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
};

struct PpoBatch {
  std::vector<std::vector<double>> obs;
  std::vector<int> actions;
  std::vector<double> old_log_prob;
  std::vector<double> advantages;
  std::vector<double> value_targets;

  size_t size() const { return obs.size(); }
};

struct ObjectiveTerms {
  double objective = 0.0;  // surrogate - c1 * value_loss + c2 * entropy
  double surrogate = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
};

// Gradients are of the objective (ascent direction) for both networks.
struct ObjectiveResult {
  ObjectiveTerms terms;
  std::vector<double> actor_grad;
  std::vector<double> critic_grad;
};

enum class Exec { kSerial, kParallel };

// Batch mean of the PPO objective with its analytic gradient. Normalisation
// statistics are passed in so the objective is a plain function of the
// parameters (training passes the batch statistics). Both execution modes
// compute each row independently and reduce in row order, so they agree
// bit for bit.
ObjectiveResult PpoObjective(const Mlp& actor, const Mlp& critic, const PpoBatch& batch,
                             const PpoLossConfig& config, const NormStats& actor_stats,
                             const NormStats& critic_stats, Exec exec = Exec::kSerial);

double Entropy(const std::vector<double>& probs);

}  // namespace ibrl

#endif  // IBRL_PPO_OBJECTIVE_H_
