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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ibrl/common/rng.h"
#include "ibrl/explain/shapley.h"
#include "ibrl/ppo/mlp.h"

namespace ibrl {
namespace {

TEST(Shapley, LinearModelRecoversCoefficients) {
  const ModelFn f = [](const FeatureVector& x) { return x[0] + 2.0 * x[1]; };
  const auto phi = ShapleyExact(f, {1.0, 1.0}, {0.0, 0.0});
  EXPECT_NEAR(phi[0], 1.0, 1e-15);
  EXPECT_NEAR(phi[1], 2.0, 1e-15);
}

TEST(Shapley, LinearModelSixFeatures) {
  Rng rng(1);
  const std::vector<double> w = {0.5, -1, 2, 0, 3, -0.25};
  const ModelFn f = [&](const FeatureVector& x) {
    double s = 0.7;
    for (int i = 0; i < 6; ++i) s += w[i] * x[i];
    return s;
  };
  FeatureVector x(6), ref(6);
  for (int i = 0; i < 6; ++i) {
    x[i] = rng.Normal();
    ref[i] = rng.Normal();
  }
  const auto phi = ShapleyExact(f, x, ref);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(phi[i], w[i] * (x[i] - ref[i]), 1e-12);
}

TEST(Shapley, NoDeviationNoAttribution) {
  const ModelFn f = [](const FeatureVector& x) { return std::exp(x[0]) * x[1] + x[2]; };
  const auto phi = ShapleyExact(f, {0.3, 2.0, -1.0}, {0.3, 2.0, -1.0});
  for (double p : phi) EXPECT_EQ(p, 0.0);
}

TEST(Shapley, DummySymmetryEfficiency) {
  // Feature 2 is ignored; features 0 and 1 enter symmetrically.
  const ModelFn f = [](const FeatureVector& x) { return std::tanh(x[0] * x[1]) + x[0] + x[1] + x[3] * x[3]; };
  const FeatureVector x = {1.5, 1.5, 9.0, -2.0};
  const FeatureVector ref = {0.2, 0.2, 0.0, 0.5};
  const auto phi = ShapleyExact(f, x, ref);
  EXPECT_NEAR(phi[2], 0.0, 1e-10);
  EXPECT_NEAR(phi[0], phi[1], 1e-12);
  const double sum = phi[0] + phi[1] + phi[2] + phi[3];
  EXPECT_NEAR(sum, f(x) - f(ref), 1e-12);
}

TEST(Shapley, ActorEfficiencyAndParallelAgreement) {
  Mlp actor;
  Rng rng(7);
  actor.Initialize(rng, 1.0);
  actor.UpdateRunningStats({{10, 0, 0.01, 5, 0.001, 0.005}, {40, -5, 0.05, 20, 0.01, 0.02}});
  std::vector<FeatureVector> samples, background;
  for (int i = 0; i < 40; ++i) {
    FeatureVector s = {40 * rng.Uniform(), -5 * rng.Uniform(), 0.05 * rng.Uniform(),
                       20 * rng.Uniform(), 0.01 * rng.Uniform(), 0.03 * rng.Uniform()};
    (i % 2 ? samples : background).push_back(s);
  }
  const auto rows = ExplainActor(actor, samples, background, Exec::kSerial);
  ASSERT_EQ(rows.size(), 2 * samples.size());
  for (const ShapRow& r : rows) {
    double sum = r.base_value;
    for (double p : r.phi) sum += p;
    EXPECT_NEAR(sum, r.prediction, 1e-6);
  }
  // The two class probabilities sum to one, so their attributions cancel.
  for (size_t s = 0; s < samples.size(); ++s) {
    for (int f = 0; f < 6; ++f) EXPECT_NEAR(rows[s].phi[f] + rows[samples.size() + s].phi[f], 0.0, 1e-9);
  }
  const auto par = ExplainActor(actor, samples, background, Exec::kParallel);
  for (size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].phi, par[i].phi);
}

ShapRow Row(int sample, int cls, std::vector<double> phi) {
  ShapRow r;
  r.sample = sample;
  r.output_class = cls;
  r.features.assign(phi.size(), 0.0);
  r.phi = std::move(phi);
  return r;
}

TEST(Ranking, OrderTiesAndPermutation) {
  const std::vector<std::string> names = {"a", "b", "c"};
  std::vector<ShapRow> rows = {Row(0, 0, {0, 0.5, 0}), Row(1, 0, {0, -0.3, 0}),
                               Row(0, 1, {0, 0, 0}), Row(1, 1, {0, 0, 0})};
  const auto ranking = RankFeatures(rows, names);
  ASSERT_EQ(ranking.size(), 6u);
  EXPECT_EQ(ranking[0].feature, "b");
  EXPECT_NEAR(ranking[0].mean_abs_phi, 0.4, 1e-15);
  EXPECT_EQ(ranking[3].feature, "a");
  EXPECT_EQ(ranking[4].feature, "b");
  EXPECT_EQ(ranking[5].feature, "c");
  std::swap(rows[0], rows[1]);
  const auto again = RankFeatures(rows, names);
  for (size_t i = 0; i < 6; ++i) EXPECT_EQ(again[i].feature, ranking[i].feature);
}

TEST(Ranking, CsvLayout) {
  const std::vector<std::string> names = {"a", "b"};
  const std::vector<ShapRow> rows = {Row(0, 0, {1, 2}), Row(0, 1, {-1, -2})};
  std::ostringstream shap, rank;
  WriteShapCsv(shap, rows, names);
  WriteRankingCsv(rank, RankFeatures(rows, names));
  const std::string s = shap.str(), k = rank.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "feature,sample,phi,feature_value,class");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 5);
  EXPECT_EQ(k.substr(0, k.find('\n')), "class,rank,feature,mean_abs_phi");
  EXPECT_EQ(ObservationFeatureNames().size(), 6u);
}

TEST(Background, Mean) {
  const auto m = BackgroundMean({{1, 2}, {3, 6}});
  EXPECT_EQ(m, (FeatureVector{2, 4}));
  EXPECT_THROW(BackgroundMean({}), std::invalid_argument);
}

}  // namespace
}  // namespace ibrl
