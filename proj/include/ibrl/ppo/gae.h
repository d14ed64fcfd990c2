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


#ifndef IBRL_PPO_GAE_H_
#define IBRL_PPO_GAE_H_

#include <vector>

namespace ibrl {

// Truncated generalised advantage estimate. `values` has one more entry
// than `rewards`: the bootstrap value after the last step (0 at a terminal).
std::vector<double> Gae(const std::vector<double>& rewards, const std::vector<double>& values,
                        double gamma, double tau);

// Discounted reward-to-go, the critic's regression target.
std::vector<double> DiscountedReturns(const std::vector<double>& rewards, double gamma);

// Rescales to mean 0 and std 1 (population std). A constant input maps to 0.
void Standardize(std::vector<double>& x);

}  // namespace ibrl

#endif  // IBRL_PPO_GAE_H_
