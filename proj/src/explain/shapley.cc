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


#include "ibrl/explain/shapley.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ibrl/common/csv.h"

namespace ibrl {

std::vector<double> ShapleyExact(const ModelFn& model, const FeatureVector& x,
                                 const FeatureVector& reference) {
  const int k = static_cast<int>(x.size());
  if (k == 0 || reference.size() != x.size()) throw std::invalid_argument("feature size mismatch");
  if (k > 20) throw std::invalid_argument("exact enumeration limited to 20 features");
  const uint32_t subsets = 1u << k;
  // Value of every coalition, evaluated once.
  std::vector<double> value(subsets);
  FeatureVector z(k);
  for (uint32_t s = 0; s < subsets; ++s) {
    for (int i = 0; i < k; ++i) z[i] = (s >> i) & 1u ? x[i] : reference[i];
    value[s] = model(z);
  }
  // weight[m] = m! (k - m - 1)! / k!
  std::vector<double> weight(k);
  for (int m = 0; m < k; ++m) {
    double w = 1.0 / k;
    // 1 / (k * C(k-1, m))
    for (int j = 1; j <= m; ++j) w *= static_cast<double>(j) / static_cast<double>(k - j);
    weight[m] = w;
  }
  std::vector<double> phi(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const uint32_t bit = 1u << i;
    for (uint32_t s = 0; s < subsets; ++s) {
      if (s & bit) continue;
      phi[i] += weight[std::popcount(s)] * (value[s | bit] - value[s]);
    }
  }
  return phi;
}

FeatureVector BackgroundMean(const std::vector<FeatureVector>& background) {
  if (background.empty()) throw std::invalid_argument("background set is empty");
  FeatureVector mean(background.front().size(), 0.0);
  for (const auto& row : background) {
    if (row.size() != mean.size()) throw std::invalid_argument("background rows differ in size");
    for (size_t i = 0; i < row.size(); ++i) mean[i] += row[i];
  }
  for (double& m : mean) m /= static_cast<double>(background.size());
  return mean;
}

namespace {

std::array<ShapRow, 2> ExplainSample(const Mlp& actor, const FeatureVector& x,
                                     const FeatureVector& reference, int sample) {
  std::array<ShapRow, 2> out;
  for (int c = 0; c < 2; ++c) {
    ModelFn f = [&actor, c](const FeatureVector& z) {
      const std::vector<double> logits = actor.ForwardEval(z);
      std::vector<double> p(logits.size());
      FlooredSoftmax(logits.data(), static_cast<int>(logits.size()), p.data());
      return p[c];
    };
    ShapRow& row = out[c];
    row.sample = sample;
    row.output_class = c;
    row.features = x;
    row.phi = ShapleyExact(f, x, reference);
    row.base_value = f(reference);
    row.prediction = f(x);
  }
  return out;
}

}  // namespace

std::vector<ShapRow> ExplainActor(const Mlp& actor, const std::vector<FeatureVector>& samples,
                                  const std::vector<FeatureVector>& background, Exec exec) {
  if (samples.empty()) throw std::invalid_argument("no samples to explain");
  if (actor.shape().output != 2) throw std::invalid_argument("actor must have two outputs");
  const FeatureVector reference = BackgroundMean(background);
  const long long n = static_cast<long long>(samples.size());
  std::vector<std::array<ShapRow, 2>> per_sample(n);
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
      per_sample[i] = ExplainSample(actor, samples[i], reference, static_cast<int>(i));
    }
  } else {
    for (long long i = 0; i < n; ++i) {
      per_sample[i] = ExplainSample(actor, samples[i], reference, static_cast<int>(i));
    }
  }
  // Class-major so each class block reads like one summary panel.
  std::vector<ShapRow> rows;
  rows.reserve(2 * n);
  for (int c = 0; c < 2; ++c) {
    for (auto& pair : per_sample) rows.push_back(pair[c]);
  }
  return rows;
}

std::vector<FeatureImportance> RankFeatures(const std::vector<ShapRow>& rows,
                                            const std::vector<std::string>& names) {
  if (rows.empty()) throw std::invalid_argument("no attribution rows to rank");
  const size_t k = names.size();
  std::vector<FeatureImportance> out;
  for (int c = 0; c < 2; ++c) {
    std::vector<double> total(k, 0.0);
    int count = 0;
    for (const ShapRow& r : rows) {
      if (r.output_class != c) continue;
      if (r.phi.size() != k) throw std::invalid_argument("feature names do not match attributions");
      for (size_t i = 0; i < k; ++i) total[i] += std::abs(r.phi[i]);
      ++count;
    }
    if (count == 0) continue;
    std::vector<size_t> order(k);
    for (size_t i = 0; i < k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return total[a] > total[b]; });
    for (size_t r = 0; r < k; ++r) {
      out.push_back({c, static_cast<int>(r) + 1, names[order[r]], total[order[r]] / count});
    }
  }
  return out;
}

void WriteShapCsv(std::ostream& out, const std::vector<ShapRow>& rows,
                  const std::vector<std::string>& names) {
  out << "feature,sample,phi,feature_value,class\n";
  for (const ShapRow& r : rows) {
    for (size_t i = 0; i < r.phi.size(); ++i) {
      WriteRow(out, {names.at(i), FormatNumber(r.sample), FormatNumber(r.phi[i]),
                     FormatNumber(r.features[i]), FormatNumber(r.output_class)});
    }
  }
}

void WriteRankingCsv(std::ostream& out, const std::vector<FeatureImportance>& ranking) {
  out << "class,rank,feature,mean_abs_phi\n";
  for (const FeatureImportance& f : ranking) {
    WriteRow(out, {FormatNumber(f.output_class), FormatNumber(f.rank), f.feature,
                   FormatNumber(f.mean_abs_phi)});
  }
}

std::vector<std::string> ObservationFeatureNames() {
  return std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
}

}  // namespace ibrl
