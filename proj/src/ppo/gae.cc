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


#include "ibrl/ppo/gae.h"

#include <cmath>
#include <stdexcept>

namespace ibrl {

std::vector<double> Gae(const std::vector<double>& rewards, const std::vector<double>& values,
                        double gamma, double tau) {
  if (values.size() != rewards.size() + 1) {
    throw std::invalid_argument("gae needs one bootstrap value past the last reward");
  }
  std::vector<double> adv(rewards.size());
  double running = 0.0;
  for (size_t t = rewards.size(); t-- > 0;) {
    const double delta = rewards[t] + gamma * values[t + 1] - values[t];
    running = delta + gamma * tau * running;
    adv[t] = running;
  }
  return adv;
}

std::vector<double> DiscountedReturns(const std::vector<double>& rewards, double gamma) {
  std::vector<double> out(rewards.size());
  double running = 0.0;
  for (size_t t = rewards.size(); t-- > 0;) {
    running = rewards[t] + gamma * running;
    out[t] = running;
  }
  return out;
}

void Standardize(std::vector<double>& x) {
  if (x.empty()) return;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(x.size()));
  for (double& v : x) v = sd > 1e-12 ? (v - mean) / sd : 0.0;
}

}  // namespace ibrl
