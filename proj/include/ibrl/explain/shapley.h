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


#ifndef IBRL_EXPLAIN_SHAPLEY_H_
#define IBRL_EXPLAIN_SHAPLEY_H_

#include <array>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "ibrl/env/environment.h"
#include "ibrl/ppo/mlp.h"
#include "ibrl/ppo/objective.h"

namespace ibrl {

using FeatureVector = std::vector<double>;
using ModelFn = std::function<double(const FeatureVector&)>;

// Exact Shapley values of `model` at `x` by enumerating all 2^K coalitions.
// Features outside a coalition take the value in `reference`.
std::vector<double> ShapleyExact(const ModelFn& model, const FeatureVector& x,
                                 const FeatureVector& reference);

// Per-feature mean of a background set.
FeatureVector BackgroundMean(const std::vector<FeatureVector>& background);

// Attribution of one class probability of an actor.
struct ShapRow {
  int sample = 0;
  int output_class = 0;
  double base_value = 0.0;  // f(reference)
  double prediction = 0.0;  // f(x)
  FeatureVector features;
  std::vector<double> phi;
};

// Explains both classes for every sample. Samples are independent so the
// parallel path only changes who computes which row.
std::vector<ShapRow> ExplainActor(const Mlp& actor, const std::vector<FeatureVector>& samples,
                                  const std::vector<FeatureVector>& background, Exec exec);

struct FeatureImportance {
  int output_class = 0;
  int rank = 0;  // 1 = most relevant
  std::string feature;
  double mean_abs_phi = 0.0;
};

// Ranked by mean |phi| per class; ties keep input order.
std::vector<FeatureImportance> RankFeatures(const std::vector<ShapRow>& rows,
                                            const std::vector<std::string>& names);

// `feature,sample,phi,feature_value,class`
void WriteShapCsv(std::ostream& out, const std::vector<ShapRow>& rows,
                  const std::vector<std::string>& names);
// `class,rank,feature,mean_abs_phi`
void WriteRankingCsv(std::ostream& out, const std::vector<FeatureImportance>& ranking);

std::vector<std::string> ObservationFeatureNames();

}  // namespace ibrl

#endif  // IBRL_EXPLAIN_SHAPLEY_H_
