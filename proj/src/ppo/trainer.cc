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


#include "ibrl/ppo/trainer.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "ibrl/common/errors.h"
#include "ibrl/ppo/checkpoint.h"
#include "ibrl/ppo/gae.h"
#include "ibrl/ppo/policy.h"

namespace ibrl {

void PpoConfig::Validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("gae tau must lie in [0, 1]");
  if (!(loss.clip > 0.0)) throw std::invalid_argument("clip must be positive");
  if (!(loss.value_coef >= 0.0 && loss.entropy_coef >= 0.0)) {
    throw std::invalid_argument("loss coefficients must be non-negative");
  }
  if (epochs < 1 || epochs > 3) throw std::invalid_argument("epochs must lie in [1, 3]");
  if (minibatch < 2) throw std::invalid_argument("minibatch must be at least 2 for batch norm");
  if (hidden.empty()) throw std::invalid_argument("need at least one hidden layer");
  if (episodes < 0 || eval_every < 1 || eval_episodes < 1 || instances < 1) {
    throw std::invalid_argument("episode counts must be positive");
  }
  if (!(return_momentum > 0.0 && return_momentum <= 1.0)) {
    throw std::invalid_argument("return_momentum must lie in (0, 1]");
  }
}

void ReturnScaler::Update(const std::vector<double>& returns, double momentum) {
  if (returns.empty()) return;
  double m = 0.0;
  for (double r : returns) m += r;
  m /= static_cast<double>(returns.size());
  double v = 0.0;
  for (double r : returns) v += (r - m) * (r - m);
  v /= static_cast<double>(returns.size());
  if (!initialized) {
    mean = m;
    var = v;
    initialized = true;
    return;
  }
  mean = (1.0 - momentum) * mean + momentum * m;
  var = (1.0 - momentum) * var + momentum * v;
}

double ReturnScaler::scale() const { return std::sqrt(std::max(var, 1e-8)); }

namespace {

MlpShape ActorShape(const PpoConfig& c) { return {kObservationSize, c.hidden, 2}; }
MlpShape CriticShape(const PpoConfig& c) { return {kObservationSize, c.hidden, 1}; }

bool AllFinite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

PpoAgent::PpoAgent(MarketConfig market, PpoConfig config, int instance, Exec exec)
    : market_(std::move(market)), config_(std::move(config)), exec_(exec) {
  config_.Validate();
  market_.Validate();
  state_.instance = instance;
  state_.instance_seed = DeriveSeed(config_.seed, 100 + static_cast<uint64_t>(instance));
  state_.rng = Rng(state_.instance_seed);
  state_.actor = Mlp(ActorShape(config_), config_.bn_momentum, config_.bn_epsilon);
  state_.critic = Mlp(CriticShape(config_), config_.bn_momentum, config_.bn_epsilon);
  state_.actor.Initialize(state_.rng, config_.actor_output_gain);
  state_.critic.Initialize(state_.rng, 1.0);
  state_.actor_opt = Adam(state_.actor.num_params(), config_.adam);
  state_.critic_opt = Adam(state_.critic.num_params(), config_.adam);
}

PpoAgent::PpoAgent(MarketConfig market, PpoConfig config, AgentState state, Exec exec)
    : market_(std::move(market)), config_(std::move(config)), exec_(exec), state_(std::move(state)) {
  config_.Validate();
  market_.Validate();
  if (!(state_.actor.shape() == ActorShape(config_)) ||
      !(state_.critic.shape() == CriticShape(config_))) {
    throw ConfigError("checkpoint network shape does not match the configured hidden layers");
  }
}

UpdateStats PpoAgent::TrainEpisode() {
  Environment env(market_);
  env.set_record_trace(false);
  MdpObservation obs =
      env.Reset(DeriveSeed(state_.instance_seed, static_cast<uint64_t>(state_.episodes_done) + 1));
  std::vector<std::vector<double>> rows;
  std::vector<int> actions;
  std::vector<double> log_probs, rewards;
  while (!env.done()) {
    const std::vector<double> probs = ActionProbabilities(state_.actor, obs);
    const int a = SampleAction(probs, state_.rng);
    rows.push_back(ObservationInput(obs));
    actions.push_back(a);
    log_probs.push_back(std::log(probs[a]));
    StepResult r = env.Step(a);
    rewards.push_back(r.reward);
    obs = r.observation;
  }
  UpdateStats stats = Update(rows, actions, log_probs, rewards);
  ++state_.episodes_done;
  return stats;
}

UpdateStats PpoAgent::Update(const std::vector<std::vector<double>>& obs,
                             const std::vector<int>& actions, const std::vector<double>& log_probs,
                             const std::vector<double>& rewards) {
  const size_t n = obs.size();
  // Before the first update the networks have never seen data; seed the
  // normalisation from the whole rollout.
  if (!state_.actor.has_running_stats()) state_.actor.UpdateRunningStats(obs);
  if (!state_.critic.has_running_stats()) state_.critic.UpdateRunningStats(obs);

  const std::vector<double> returns = DiscountedReturns(rewards, config_.gamma);
  state_.returns.Update(returns, config_.return_momentum);
  const double r_mean = state_.returns.mean, r_scale = state_.returns.scale();
  std::vector<double> targets(n);
  for (size_t t = 0; t < n; ++t) targets[t] = (returns[t] - r_mean) / r_scale;

  UpdateStats out;
  int updates = 0;
  std::vector<size_t> order(n);
  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    std::vector<double> values(n + 1, 0.0);
    for (size_t t = 0; t < n; ++t) values[t] = state_.critic.ForwardEval(obs[t])[0] * r_scale + r_mean;
    std::vector<double> adv = Gae(rewards, values, config_.gamma, config_.tau);
    Standardize(adv);

    for (size_t i = 0; i < n; ++i) order[i] = i;
    for (size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[state_.rng.UniformInt(static_cast<int>(i))]);
    }
    for (size_t start = 0; start < n; start += config_.minibatch) {
      const size_t end = std::min(n, start + static_cast<size_t>(config_.minibatch));
      if (end - start < 2) continue;
      PpoBatch batch;
      for (size_t i = start; i < end; ++i) {
        const size_t t = order[i];
        batch.obs.push_back(obs[t]);
        batch.actions.push_back(actions[t]);
        batch.old_log_prob.push_back(log_probs[t]);
        batch.advantages.push_back(adv[t]);
        batch.value_targets.push_back(targets[t]);
      }
      const NormStats actor_stats = state_.actor.BatchStats(batch.obs);
      const NormStats critic_stats = state_.critic.BatchStats(batch.obs);
      ObjectiveResult res = PpoObjective(state_.actor, state_.critic, batch, config_.loss,
                                         actor_stats, critic_stats, exec_);
      if (!std::isfinite(res.terms.objective) || !AllFinite(res.actor_grad) ||
          !AllFinite(res.critic_grad)) {
        throw DivergenceError("instance " + std::to_string(state_.instance) +
                              ": non-finite objective at episode " +
                              std::to_string(state_.episodes_done + 1));
      }
      for (double& g : res.actor_grad) g = -g;
      for (double& g : res.critic_grad) g = -g;
      state_.actor_opt.Step(state_.actor.params(), res.actor_grad);
      state_.critic_opt.Step(state_.critic.params(), res.critic_grad);
      state_.actor.UpdateRunningStats(batch.obs);
      state_.critic.UpdateRunningStats(batch.obs);
      out.objective += res.terms.objective;
      out.value_loss += res.terms.value_loss;
      out.entropy += res.terms.entropy;
      out.clip_fraction += res.terms.clip_fraction;
      ++updates;
    }
  }
  if (!AllFinite(state_.actor.params()) || !AllFinite(state_.critic.params())) {
    throw DivergenceError("instance " + std::to_string(state_.instance) +
                          ": non-finite parameters at episode " +
                          std::to_string(state_.episodes_done + 1));
  }
  if (updates > 0) {
    out.objective /= updates;
    out.value_loss /= updates;
    out.entropy /= updates;
    out.clip_fraction /= updates;
  }
  return out;
}

CurvePoint PpoAgent::RecordEvaluation() {
  ActorStrategy greedy(state_.actor, true);
  EvalSummary s = Evaluate(market_, greedy, EvaluationSeeds(config_.eval_seed, config_.eval_episodes));
  CurvePoint p;
  p.episode = state_.episodes_done;
  p.instance = state_.instance;
  p.eval_mean = s.mean;
  p.eval_std = s.std;
  state_.curve.push_back(p);
  return p;
}

std::string CheckpointName(int instance) { return "instance_" + std::to_string(instance) + ".json"; }

namespace {

InstanceResult TrainOne(const MarketConfig& market, const PpoConfig& config, int k,
                        const std::string& out_dir, bool resume, Exec inner, Mlp* actor_out) {
  InstanceResult res;
  res.instance = k;
  const std::string path =
      out_dir.empty() ? std::string() : (std::filesystem::path(out_dir) / CheckpointName(k)).string();
  try {
    PpoAgent agent = resume && !path.empty() && std::filesystem::exists(path)
                         ? PpoAgent(market, config, LoadCheckpoint(path), inner)
                         : PpoAgent(market, config, k, inner);
    if (agent.state().curve.empty()) agent.RecordEvaluation();
    while (agent.state().episodes_done < config.episodes) {
      agent.TrainEpisode();
      const int done = agent.state().episodes_done;
      if (done % config.eval_every == 0 || done == config.episodes) {
        agent.RecordEvaluation();
        if (!path.empty()) SaveCheckpoint(path, agent.state(), config, market);
      }
    }
    if (!path.empty()) {
      SaveCheckpoint(path, agent.state(), config, market);
      res.checkpoint = path;
    }
    res.curve = agent.state().curve;
    res.final_eval_mean = res.curve.back().eval_mean;
    *actor_out = agent.state().actor;
  } catch (const DivergenceError& e) {
    res.diverged = true;
    res.error = e.what();
  }
  return res;
}

}  // namespace

TrainResult TrainInstances(const MarketConfig& market, const PpoConfig& config,
                           const std::string& out_dir, bool resume, Exec exec) {
  config.Validate();
  market.Validate();
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  const int n = config.instances;
  TrainResult result;
  result.instances.resize(n);
  result.actors.resize(n);
  // Instances are independent; gradient rows inside each stay serial so the
  // only parallel level is the outer one.
  if (exec == Exec::kParallel) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < n; ++k) {
      try {
        result.instances[k] = TrainOne(market, config, k, out_dir, resume, Exec::kSerial,
                                       &result.actors[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (int k = 0; k < n; ++k) {
      result.instances[k] =
          TrainOne(market, config, k, out_dir, resume, Exec::kSerial, &result.actors[k]);
    }
  }
  for (const InstanceResult& r : result.instances) {
    if (r.diverged) continue;
    if (result.best_instance < 0 ||
        r.final_eval_mean > result.instances[result.best_instance].final_eval_mean) {
      result.best_instance = r.instance;
    }
  }
  if (result.best_instance < 0) throw DivergenceError("every training instance diverged");
  return result;
}

}  // namespace ibrl
