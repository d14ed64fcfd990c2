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


#ifndef IBRL_PPO_ADAM_H_
#define IBRL_PPO_ADAM_H_

#include <cstdint>
#include <vector>

namespace ibrl {

struct AdamConfig {
  double learning_rate = 0.005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam on a flat parameter vector. Step() descends, so pass
// the gradient of the quantity to minimise.
class Adam {
 public:
  Adam() = default;
  Adam(size_t num_params, AdamConfig config);

  void Step(std::vector<double>& params, const std::vector<double>& grad);

  const AdamConfig& config() const { return config_; }
  int64_t step_count() const { return t_; }
  const std::vector<double>& first_moment() const { return m_; }
  const std::vector<double>& second_moment() const { return v_; }
  void Restore(int64_t t, std::vector<double> m, std::vector<double> v);

 private:
  AdamConfig config_;
  int64_t t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace ibrl

#endif  // IBRL_PPO_ADAM_H_
