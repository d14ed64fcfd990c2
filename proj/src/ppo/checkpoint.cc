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


#include "ibrl/ppo/checkpoint.h"

#include <fstream>

#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"
#include "json.hpp"

namespace ibrl {

using nlohmann::json;

namespace {

json NetToJson(const Mlp& net) {
  return json{{"input", net.shape().input},
              {"hidden", net.shape().hidden},
              {"output", net.shape().output},
              {"bn_momentum", net.bn_momentum()},
              {"bn_epsilon", net.bn_epsilon()},
              {"has_running_stats", net.has_running_stats()},
              {"running_mean", net.running_mean()},
              {"running_var", net.running_var()},
              {"params", net.params()}};
}

Mlp NetFromJson(const json& j) {
  MlpShape shape{j.at("input").get<int>(), j.at("hidden").get<std::vector<int>>(),
                 j.at("output").get<int>()};
  Mlp net(shape, j.at("bn_momentum").get<double>(), j.at("bn_epsilon").get<double>());
  auto params = j.at("params").get<std::vector<double>>();
  if (params.size() != net.num_params()) throw IoError("checkpoint parameter count mismatch");
  net.params() = std::move(params);
  if (j.at("has_running_stats").get<bool>()) {
    net.SetRunningStats(j.at("running_mean").get<std::vector<double>>(),
                        j.at("running_var").get<std::vector<double>>());
  }
  return net;
}

json AdamToJson(const Adam& opt) {
  return json{{"t", opt.step_count()}, {"m", opt.first_moment()}, {"v", opt.second_moment()}};
}

json LoadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path);
  try {
    json j = json::parse(in);
    if (j.value("format", "") != "ibrl-ppo") throw IoError("not a checkpoint: " + path);
    if (j.value("version", 0) != kCheckpointVersion) {
      throw IoError("unsupported checkpoint version in " + path);
    }
    return j;
  } catch (const json::exception& e) {
    throw IoError("malformed checkpoint " + path + ": " + e.what());
  }
}

}  // namespace

void SaveCheckpoint(const std::string& path, const AgentState& state, const PpoConfig& config,
                    const MarketConfig& market) {
  json curve = json::array();
  for (const CurvePoint& p : state.curve) {
    curve.push_back({{"episode", p.episode}, {"eval_mean", p.eval_mean}, {"eval_std", p.eval_std}});
  }
  json j = {
      {"format", "ibrl-ppo"},
      {"version", kCheckpointVersion},
      {"instance", state.instance},
      {"instance_seed", state.instance_seed},
      {"episodes_done", state.episodes_done},
      {"actor", NetToJson(state.actor)},
      {"critic", NetToJson(state.critic)},
      {"actor_adam", AdamToJson(state.actor_opt)},
      {"critic_adam", AdamToJson(state.critic_opt)},
      {"rng", state.rng.SaveState()},
      {"returns", {{"mean", state.returns.mean}, {"var", state.returns.var},
                   {"initialized", state.returns.initialized}}},
      {"curve", curve},
      {"config",
       {{"gamma", config.gamma},
        {"tau", config.tau},
        {"clip", config.loss.clip},
        {"value_coef", config.loss.value_coef},
        {"entropy_coef", config.loss.entropy_coef},
        {"epochs", config.epochs},
        {"minibatch", config.minibatch},
        {"learning_rate", config.adam.learning_rate},
        {"adam_beta1", config.adam.beta1},
        {"adam_beta2", config.adam.beta2},
        {"adam_epsilon", config.adam.epsilon},
        {"episodes", config.episodes},
        {"eval_every", config.eval_every},
        {"eval_episodes", config.eval_episodes},
        {"instances", config.instances},
        {"seed", config.seed},
        {"eval_seed", config.eval_seed},
        {"num_banks", market.num_banks},
        {"horizon", market.horizon},
        {"beta", market.beta},
        {"fire_sale_price", market.shock.fire_sale_price}}}};
  WriteTextFile(path, [&](std::ostream& out) { out << j.dump(1) << '\n'; });
}

AgentState LoadCheckpoint(const std::string& path) {
  json j = LoadJson(path);
  try {
    AgentState s;
    s.instance = j.at("instance").get<int>();
    s.instance_seed = j.at("instance_seed").get<uint64_t>();
    s.episodes_done = j.at("episodes_done").get<int>();
    s.actor = NetFromJson(j.at("actor"));
    s.critic = NetFromJson(j.at("critic"));
    AdamConfig adam{j.at("config").at("learning_rate").get<double>(),
                    j.at("config").at("adam_beta1").get<double>(),
                    j.at("config").at("adam_beta2").get<double>(),
                    j.at("config").at("adam_epsilon").get<double>()};
    s.actor_opt = Adam(s.actor.num_params(), adam);
    s.actor_opt.Restore(j.at("actor_adam").at("t").get<int64_t>(),
                        j.at("actor_adam").at("m").get<std::vector<double>>(),
                        j.at("actor_adam").at("v").get<std::vector<double>>());
    s.critic_opt = Adam(s.critic.num_params(), adam);
    s.critic_opt.Restore(j.at("critic_adam").at("t").get<int64_t>(),
                         j.at("critic_adam").at("m").get<std::vector<double>>(),
                         j.at("critic_adam").at("v").get<std::vector<double>>());
    s.rng.LoadState(j.at("rng").get<std::string>());
    s.returns.mean = j.at("returns").at("mean").get<double>();
    s.returns.var = j.at("returns").at("var").get<double>();
    s.returns.initialized = j.at("returns").at("initialized").get<bool>();
    for (const json& p : j.at("curve")) {
      s.curve.push_back({p.at("episode").get<int>(), s.instance, p.at("eval_mean").get<double>(),
                         p.at("eval_std").get<double>()});
    }
    return s;
  } catch (const json::exception& e) {
    throw IoError("malformed checkpoint " + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError("malformed checkpoint " + path + ": " + e.what());
  }
}

Mlp LoadActor(const std::string& path) {
  json j = LoadJson(path);
  try {
    return NetFromJson(j.at("actor"));
  } catch (const json::exception& e) {
    throw IoError("malformed checkpoint " + path + ": " + e.what());
  }
}

}  // namespace ibrl
