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


#include "ibrl/ppo/mlp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ibrl {

Mlp::Mlp(MlpShape shape, double bn_momentum, double bn_epsilon)
    : shape_(std::move(shape)), bn_momentum_(bn_momentum), bn_epsilon_(bn_epsilon) {
  if (shape_.input < 1 || shape_.output < 1) throw std::invalid_argument("mlp needs inputs and outputs");
  for (int h : shape_.hidden) {
    if (h < 1) throw std::invalid_argument("hidden layer width must be positive");
  }
  if (!(bn_momentum_ > 0.0 && bn_momentum_ <= 1.0)) {
    throw std::invalid_argument("batch-norm momentum must lie in (0, 1]");
  }
  size_t offset = 2 * static_cast<size_t>(shape_.input);
  int in = shape_.input;
  std::vector<int> widths = shape_.hidden;
  widths.push_back(shape_.output);
  for (int out : widths) {
    Layer layer;
    layer.in = in;
    layer.out = out;
    layer.weight_offset = offset;
    offset += static_cast<size_t>(in) * out;
    layer.bias_offset = offset;
    offset += out;
    layers_.push_back(layer);
    in = out;
  }
  params_.assign(offset, 0.0);
  for (int i = 0; i < shape_.input; ++i) params_[i] = 1.0;
  running_mean_.assign(shape_.input, 0.0);
  running_var_.assign(shape_.input, 1.0);
}

void Mlp::Initialize(Rng& rng, double output_gain) {
  std::fill(params_.begin(), params_.end(), 0.0);
  for (int i = 0; i < shape_.input; ++i) params_[i] = 1.0;
  for (size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
    const double gain = l + 1 == layers_.size() ? output_gain : 1.0;
    const size_t end = layer.bias_offset + layer.out;
    for (size_t p = layer.weight_offset; p < end; ++p) {
      params_[p] = gain * bound * (2.0 * rng.Uniform() - 1.0);
    }
  }
}

void Mlp::SetRunningStats(std::vector<double> mean, std::vector<double> var) {
  if (mean.size() != running_mean_.size() || var.size() != running_var_.size()) {
    throw std::invalid_argument("running stats size mismatch");
  }
  running_mean_ = std::move(mean);
  running_var_ = std::move(var);
  has_running_stats_ = true;
}

NormStats Mlp::BatchStats(const std::vector<std::vector<double>>& rows) const {
  if (rows.empty()) throw std::invalid_argument("empty batch");
  const int n = shape_.input;
  NormStats s;
  s.mean.assign(n, 0.0);
  s.inv_std.assign(n, 0.0);
  for (const auto& r : rows) {
    for (int i = 0; i < n; ++i) s.mean[i] += r[i];
  }
  for (int i = 0; i < n; ++i) s.mean[i] /= static_cast<double>(rows.size());
  std::vector<double> var(n, 0.0);
  for (const auto& r : rows) {
    for (int i = 0; i < n; ++i) var[i] += (r[i] - s.mean[i]) * (r[i] - s.mean[i]);
  }
  for (int i = 0; i < n; ++i) {
    s.inv_std[i] = 1.0 / std::sqrt(var[i] / static_cast<double>(rows.size()) + bn_epsilon_);
  }
  return s;
}

NormStats Mlp::EvalStats() const {
  NormStats s;
  s.mean = running_mean_;
  s.inv_std.resize(running_var_.size());
  for (size_t i = 0; i < running_var_.size(); ++i) {
    s.inv_std[i] = has_running_stats_ ? 1.0 / std::sqrt(running_var_[i] + bn_epsilon_) : 1.0;
  }
  if (!has_running_stats_) std::fill(s.mean.begin(), s.mean.end(), 0.0);
  return s;
}

void Mlp::UpdateRunningStats(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return;
  const int n = shape_.input;
  const double count = static_cast<double>(rows.size());
  std::vector<double> mean(n, 0.0), var(n, 0.0);
  for (const auto& r : rows) {
    for (int i = 0; i < n; ++i) mean[i] += r[i];
  }
  for (int i = 0; i < n; ++i) mean[i] /= count;
  for (const auto& r : rows) {
    for (int i = 0; i < n; ++i) var[i] += (r[i] - mean[i]) * (r[i] - mean[i]);
  }
  for (int i = 0; i < n; ++i) var[i] /= rows.size() > 1 ? count - 1.0 : 1.0;
  if (!has_running_stats_) {
    running_mean_ = mean;
    running_var_ = var;
    has_running_stats_ = true;
    return;
  }
  for (int i = 0; i < n; ++i) {
    running_mean_[i] = (1.0 - bn_momentum_) * running_mean_[i] + bn_momentum_ * mean[i];
    running_var_[i] = (1.0 - bn_momentum_) * running_var_[i] + bn_momentum_ * var[i];
  }
}

void Mlp::Forward(const double* x, const NormStats& stats, double* out, RowCache* cache) const {
  const int n = shape_.input;
  std::vector<double> xhat(n), h(n);
  for (int i = 0; i < n; ++i) {
    xhat[i] = (x[i] - stats.mean[i]) * stats.inv_std[i];
    h[i] = params_[i] * xhat[i] + params_[n + i];
  }
  if (cache) {
    cache->normalized = xhat;
    cache->outputs.assign(layers_.size(), {});
    cache->outputs[0] = h;
  }
  for (size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const bool last = l + 1 == layers_.size();
    std::vector<double> z(layer.out);
    for (int o = 0; o < layer.out; ++o) {
      const double* w = &params_[layer.weight_offset + static_cast<size_t>(o) * layer.in];
      double acc = params_[layer.bias_offset + o];
      for (int i = 0; i < layer.in; ++i) acc += w[i] * h[i];
      z[o] = last ? acc : std::tanh(acc);
    }
    if (last) {
      std::copy(z.begin(), z.end(), out);
    } else {
      h = std::move(z);
      if (cache) cache->outputs[l + 1] = h;
    }
  }
}

std::vector<double> Mlp::ForwardEval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != shape_.input) throw std::invalid_argument("input size mismatch");
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite network input");
  }
  std::vector<double> out(shape_.output);
  Forward(x.data(), EvalStats(), out.data(), nullptr);
  return out;
}

void Mlp::Backward(const RowCache& cache, const double* dout, double* grad) const {
  std::vector<double> g(dout, dout + shape_.output);
  for (size_t l = layers_.size(); l-- > 0;) {
    const Layer& layer = layers_[l];
    const std::vector<double>& in = cache.outputs[l];
    std::vector<double> g_in(layer.in, 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double go = g[o];
      double* gw = grad + layer.weight_offset + static_cast<size_t>(o) * layer.in;
      const double* w = &params_[layer.weight_offset + static_cast<size_t>(o) * layer.in];
      for (int i = 0; i < layer.in; ++i) {
        gw[i] += go * in[i];
        g_in[i] += w[i] * go;
      }
      grad[layer.bias_offset + o] += go;
    }
    if (l > 0) {
      for (int i = 0; i < layer.in; ++i) g_in[i] *= 1.0 - in[i] * in[i];
    }
    g = std::move(g_in);
  }
  const int n = shape_.input;
  for (int i = 0; i < n; ++i) {
    grad[i] += g[i] * cache.normalized[i];
    grad[n + i] += g[i];
  }
}

void FlooredSoftmax(const double* logits, int k, double* probs) {
  double m = logits[0];
  for (int i = 1; i < k; ++i) m = std::max(m, logits[i]);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    probs[i] = std::exp(logits[i] - m);
    total += probs[i];
  }
  const double scale = 1.0 - k * kProbabilityFloor;
  for (int i = 0; i < k; ++i) probs[i] = kProbabilityFloor + scale * probs[i] / total;
}

}  // namespace ibrl
