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


#ifndef IBRL_PPO_CHECKPOINT_H_
#define IBRL_PPO_CHECKPOINT_H_

#include <string>

#include "ibrl/env/environment.h"
#include "ibrl/ppo/trainer.h"

namespace ibrl {

inline constexpr int kCheckpointVersion = 1;

// JSON container: layer shapes, weights, batch-norm running statistics,
// Adam moments, RNG state, return scaler, learning curve and a config echo.
void SaveCheckpoint(const std::string& path, const AgentState& state, const PpoConfig& config,
                    const MarketConfig& market);
AgentState LoadCheckpoint(const std::string& path);
// Only the actor, for evaluation and attribution.
Mlp LoadActor(const std::string& path);

}  // namespace ibrl

#endif  // IBRL_PPO_CHECKPOINT_H_
