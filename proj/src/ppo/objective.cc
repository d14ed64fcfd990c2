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


#include "ibrl/ppo/objective.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ibrl {

namespace {

struct RowTerms {
  double surrogate = 0.0;
  double value_sq = 0.0;
  double entropy = 0.0;
  bool clipped = false;
};

// Objective contribution of one row (before the 1/B mean) and its
// gradients, written into zeroed buffers.
RowTerms RowObjective(const Mlp& actor, const Mlp& critic, const PpoBatch& batch, size_t row,
                      const PpoLossConfig& config, const NormStats& actor_stats,
                      const NormStats& critic_stats, double* actor_grad, double* critic_grad) {
  const int k = actor.shape().output;
  const double* x = batch.obs[row].data();
  RowCache actor_cache, critic_cache;
  std::vector<double> logits(k), probs(k), soft(k);
  actor.Forward(x, actor_stats, logits.data(), &actor_cache);
  FlooredSoftmax(logits.data(), k, probs.data());
  {
    const double m = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (int i = 0; i < k; ++i) total += soft[i] = std::exp(logits[i] - m);
    for (int i = 0; i < k; ++i) soft[i] /= total;
  }
  const double scale = 1.0 - k * kProbabilityFloor;
  const int a = batch.actions[row];
  if (a < 0 || a >= k) throw std::invalid_argument("action out of range");

  RowTerms terms;
  const double log_p = std::log(probs[a]);
  const double ratio = std::exp(log_p - batch.old_log_prob[row]);
  const double adv = batch.advantages[row];
  const double unclipped = ratio * adv;
  const double clipped = std::clamp(ratio, 1.0 - config.clip, 1.0 + config.clip) * adv;
  terms.surrogate = std::min(unclipped, clipped);
  terms.clipped = std::abs(ratio - 1.0) > config.clip;
  const double d_surr_d_logp = unclipped <= clipped ? ratio * adv : 0.0;

  double weighted_log = 0.0;
  for (int j = 0; j < k; ++j) {
    terms.entropy -= probs[j] * std::log(probs[j]);
    weighted_log += soft[j] * std::log(probs[j]);
  }
  std::vector<double> d_logits(k);
  for (int j = 0; j < k; ++j) {
    const double d_logp = scale * soft[a] * ((j == a ? 1.0 : 0.0) - soft[j]) / probs[a];
    const double d_entropy = -scale * soft[j] * (std::log(probs[j]) - weighted_log);
    d_logits[j] = d_surr_d_logp * d_logp + config.entropy_coef * d_entropy;
  }
  actor.Backward(actor_cache, d_logits.data(), actor_grad);

  double value = 0.0;
  critic.Forward(x, critic_stats, &value, &critic_cache);
  const double err = value - batch.value_targets[row];
  terms.value_sq = err * err;
  const double d_value = -config.value_coef * 2.0 * err;
  critic.Backward(critic_cache, &d_value, critic_grad);
  return terms;
}

}  // namespace

ObjectiveResult PpoObjective(const Mlp& actor, const Mlp& critic, const PpoBatch& batch,
                             const PpoLossConfig& config, const NormStats& actor_stats,
                             const NormStats& critic_stats, Exec exec) {
  const size_t n = batch.size();
  if (n == 0) throw std::invalid_argument("empty ppo batch");
  if (batch.actions.size() != n || batch.old_log_prob.size() != n ||
      batch.advantages.size() != n || batch.value_targets.size() != n) {
    throw std::invalid_argument("ppo batch columns differ in length");
  }
  if (critic.shape().output != 1) throw std::invalid_argument("critic must have one output");
  const size_t pa = actor.num_params(), pc = critic.num_params();
  std::vector<double> row_actor(n * pa, 0.0), row_critic(n * pc, 0.0);
  std::vector<RowTerms> row_terms(n);

  if (exec == Exec::kParallel) {
    const long long rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < rows; ++r) {
      row_terms[r] = RowObjective(actor, critic, batch, r, config, actor_stats, critic_stats,
                                  &row_actor[r * pa], &row_critic[r * pc]);
    }
  } else {
    for (size_t r = 0; r < n; ++r) {
      row_terms[r] = RowObjective(actor, critic, batch, r, config, actor_stats, critic_stats,
                                  &row_actor[r * pa], &row_critic[r * pc]);
    }
  }

  ObjectiveResult result;
  result.actor_grad.assign(pa, 0.0);
  result.critic_grad.assign(pc, 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t r = 0; r < n; ++r) {
    const double* ga = &row_actor[r * pa];
    for (size_t i = 0; i < pa; ++i) result.actor_grad[i] += ga[i];
    const double* gc = &row_critic[r * pc];
    for (size_t i = 0; i < pc; ++i) result.critic_grad[i] += gc[i];
    result.terms.surrogate += row_terms[r].surrogate;
    result.terms.value_loss += row_terms[r].value_sq;
    result.terms.entropy += row_terms[r].entropy;
    result.terms.clip_fraction += row_terms[r].clipped ? 1.0 : 0.0;
  }
  for (double& g : result.actor_grad) g *= inv_n;
  for (double& g : result.critic_grad) g *= inv_n;
  result.terms.surrogate *= inv_n;
  result.terms.value_loss *= inv_n;
  result.terms.entropy *= inv_n;
  result.terms.clip_fraction *= inv_n;
  result.terms.objective = result.terms.surrogate - config.value_coef * result.terms.value_loss +
                           config.entropy_coef * result.terms.entropy;
  return result;
}

double Entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

}  // namespace ibrl
