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


#ifndef IBRL_PPO_MLP_H_
#define IBRL_PPO_MLP_H_

#include <vector>

#include "ibrl/common/rng.h"

namespace ibrl {

struct MlpShape {
  int input = 6;
  std::vector<int> hidden = {64, 64};
  int output = 2;

  bool operator==(const MlpShape&) const = default;
};

// Per-feature normalisation used by the input batch-norm layer: either the
// statistics of the current batch (training) or the running estimates
// (evaluation).
struct NormStats {
  std::vector<double> mean;
  std::vector<double> inv_std;
};

// Activations of one row kept for the backward pass.
struct RowCache {
  std::vector<double> normalized;            // x-hat, before scale/shift
  std::vector<std::vector<double>> outputs;  // per layer: [0] = BN output, then tanh outputs
};

// Feed-forward net: batch normalisation on the raw input, dense layers with
// tanh on the hidden ones, linear output. All trainable values live in one
// flat vector laid out as [bn_scale, bn_shift, W1, b1, W2, b2, ...] with
// row-major weights (out x in).
//
// The batch-norm layer sits directly on the observation, which is not a
// trainable quantity, so batch statistics carry no gradient and the
// backward pass stops at the scale/shift parameters.
class Mlp {
 public:
  explicit Mlp(MlpShape shape = {}, double bn_momentum = 0.1, double bn_epsilon = 1e-5);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases; the output
  // layer is multiplied by output_gain. Batch-norm scale 1, shift 0.
  void Initialize(Rng& rng, double output_gain);

  const MlpShape& shape() const { return shape_; }
  size_t num_params() const { return params_.size(); }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  double bn_momentum() const { return bn_momentum_; }
  double bn_epsilon() const { return bn_epsilon_; }
  bool has_running_stats() const { return has_running_stats_; }
  const std::vector<double>& running_mean() const { return running_mean_; }
  const std::vector<double>& running_var() const { return running_var_; }
  void SetRunningStats(std::vector<double> mean, std::vector<double> var);

  // Mean and inverse std of a batch (biased variance), rows x input.
  NormStats BatchStats(const std::vector<std::vector<double>>& rows) const;
  // Running statistics; identity normalisation before any batch was seen.
  NormStats EvalStats() const;
  // Folds one batch into the running statistics. The first batch seeds
  // them directly; later ones use the momentum with unbiased variance.
  void UpdateRunningStats(const std::vector<std::vector<double>>& rows);

  // Forward pass of one row. `cache` may be null.
  void Forward(const double* x, const NormStats& stats, double* out, RowCache* cache) const;
  std::vector<double> ForwardEval(const std::vector<double>& x) const;

  // Adds d(out)/d(params)^T * dout into grad (size num_params()).
  void Backward(const RowCache& cache, const double* dout, double* grad) const;

 private:
  struct Layer {
    int in = 0;
    int out = 0;
    size_t weight_offset = 0;
    size_t bias_offset = 0;
  };

  MlpShape shape_;
  double bn_momentum_;
  double bn_epsilon_;
  std::vector<Layer> layers_;
  std::vector<double> params_;
  std::vector<double> running_mean_;
  std::vector<double> running_var_;
  bool has_running_stats_ = false;
};

// Numerically safe two-way softmax with a floor: p = d + (1 - K d) softmax(z),
// so training-time probabilities never reach 0 or 1.
inline constexpr double kProbabilityFloor = 1e-9;
void FlooredSoftmax(const double* logits, int k, double* probs);

}  // namespace ibrl

#endif  // IBRL_PPO_MLP_H_
