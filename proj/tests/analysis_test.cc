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

#include <cmath>
#include <set>

#include "ibrl/analysis/stats.h"
#include "ibrl/analysis/topology_null.h"
#include "ibrl/common/rng.h"

namespace ibrl {
namespace {

TEST(Rolling, HandComputed) {
  const RollingSeries r = Rolling({1, 2, 3, 4, 5}, 2);
  EXPECT_EQ(r.mean, (std::vector<double>{1.5, 2.5, 3.5, 4.5}));
  for (double s : r.std) EXPECT_NEAR(s, std::sqrt(0.5), 1e-15);
  const RollingSeries c = Rolling({4, 4, 4, 4}, 3);
  for (double s : c.std) EXPECT_EQ(s, 0.0);
  const RollingSeries whole = Rolling({1, 2, 6}, 3);
  EXPECT_EQ(whole.mean, std::vector<double>{3.0});
  EXPECT_THROW(Rolling({1, 2}, 3), std::invalid_argument);
}

TEST(Regression, CategoricalGroupMeans) {
  const RegressionResult r = CategoricalRegression({1, 1, 3, 3}, {1, 1, 0, 0});
  EXPECT_NEAR(r.b0, 1.0, 1e-15);
  EXPECT_NEAR(r.b1, 2.0, 1e-15);
  const RegressionResult same = CategoricalRegression({1, 2, 1, 2}, {1, 1, 0, 0});
  EXPECT_NEAR(same.b1, 0.0, 1e-15);
  EXPECT_THROW(CategoricalRegression({1, 2, 3}, {1, 1, 1}), std::invalid_argument);
}

TEST(Regression, SimpleOls) {
  const RegressionResult exact = SimpleOls({2, 4, 6, 8}, {1, 2, 3, 4});
  EXPECT_NEAR(exact.b1, 2.0, 1e-14);
  EXPECT_NEAR(exact.b0, 0.0, 1e-14);
  EXPECT_NEAR(exact.r2, 1.0, 1e-14);
  const RegressionResult flat = SimpleOls({1, -1, -1, 1}, {-1, -1, 1, 1});
  EXPECT_NEAR(flat.b1, 0.0, 1e-15);
  EXPECT_THROW(SimpleOls({1, 2, 3}, {5, 5, 5}), std::invalid_argument);
}

TEST(Regression, TStatisticAgainstReference) {
  // y = 1 + 0.5 x + e with fixed residuals; coefficients from a hand-rolled
  // OLS in long double.
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const std::vector<double> e = {0.1, -0.2, 0.15, -0.05, 0.0, 0.02};
  std::vector<double> y(6);
  for (int i = 0; i < 6; ++i) y[i] = 1 + 0.5 * x[i] + e[i];
  long double mx = 3.5, my = 0, sxy = 0, sxx = 0;
  for (double v : y) my += v;
  my /= 6;
  for (int i = 0; i < 6; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const long double b1 = sxy / sxx, b0 = my - b1 * mx;
  long double sse = 0;
  for (int i = 0; i < 6; ++i) sse += std::pow(y[i] - b0 - b1 * x[i], 2);
  const long double se1 = std::sqrt(sse / 4 / sxx);
  const RegressionResult r = SimpleOls(y, x);
  EXPECT_NEAR(r.b1, static_cast<double>(b1), 1e-13);
  EXPECT_NEAR(r.t1, static_cast<double>(b1 / se1), 1e-9);
  EXPECT_NEAR(r.p1, 0.00010806564507573499, 1e-12);  // scipy linregress
  EXPECT_EQ(SignificanceStars(r.p1), "***");
  EXPECT_EQ(SignificanceStars(0.07), "*");
  EXPECT_EQ(SignificanceStars(0.5), "");
}

TEST(Ks, Examples) {
  EXPECT_EQ(KsTwoSample({1, 2, 3}, {1, 2, 3}).d, 0.0);
  EXPECT_EQ(KsTwoSample({1, 2, 3}, {1, 2, 3}).p_value, 1.0);
  EXPECT_EQ(KsTwoSample({0, 0}, {1, 1, 1}).d, 1.0);
  EXPECT_DOUBLE_EQ(KsTwoSample({0, 0, 1, 1}, {0, 1, 1, 1}).d, 0.25);
}

TEST(Ks, KolmogorovSeries) {
  EXPECT_NEAR(KolmogorovSurvival(1.0), 0.26999967167735456, 1e-12);
  EXPECT_NEAR(KolmogorovSurvival(1.36), 0.0494, 1e-3);
  EXPECT_EQ(KolmogorovSurvival(0.0), 1.0);
}

TEST(Ks, BinarySamplesLargeShiftRejects) {
  std::vector<double> a(500, 0.0), b(500, 0.0);
  for (int i = 0; i < 250; ++i) a[i] = 1.0;
  for (int i = 0; i < 400; ++i) b[i] = 1.0;
  const KsResult r = KsTwoSample(a, b);
  EXPECT_NEAR(r.d, 0.3, 1e-12);
  EXPECT_LT(r.p_value, 1e-10);
}

TEST(LaggedCorrelation, ShiftPeaksAtLag) {
  Rng rng(3);
  std::vector<double> x(300), y(300);
  for (auto& v : x) v = rng.Normal();
  for (int t = 0; t < 300; ++t) y[t] = t >= 3 ? x[t - 3] : rng.Normal();
  const auto lags = LaggedCorrelation(x, y, 21, 0.01);
  ASSERT_EQ(lags.size(), 43u);
  const auto& at3 = lags[21 + 3];
  EXPECT_EQ(at3.lag, 3);
  EXPECT_NEAR(at3.corr, 1.0, 1e-12);
  EXPECT_TRUE(at3.significant);
}

TEST(LaggedCorrelation, LagZeroIsPearsonAndNoiseRarelySignificant) {
  Rng rng(4);
  int significant = 0, total = 0;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(400), y(400);
    for (auto& v : x) v = rng.Normal();
    for (auto& v : y) v = rng.Normal();
    const auto lags = LaggedCorrelation(x, y, 21, 0.01);
    for (const auto& l : lags) {
      significant += l.significant;
      ++total;
    }
    double mx = Mean(x), my = Mean(y), sxy = 0, sxx = 0, syy = 0;
    for (int t = 0; t < 400; ++t) {
      sxy += (x[t] - mx) * (y[t] - my);
      sxx += (x[t] - mx) * (x[t] - mx);
      syy += (y[t] - my) * (y[t] - my);
    }
    EXPECT_NEAR(lags[21].corr, sxy / std::sqrt(sxx * syy), 1e-12);
  }
  EXPECT_LT(static_cast<double>(significant) / total, 0.03);
}

TEST(LaggedCorrelation, ConstantSeriesUndefined) {
  const auto lags = LaggedCorrelation(std::vector<double>(10, 1.0), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 2, 0.01);
  for (const auto& l : lags) EXPECT_FALSE(l.defined);
}

TEST(HubTenure, Runs) {
  EXPECT_EQ(MaxHubTenure(std::vector<int>(50, 4), std::vector<int>(50, 1)).at(1), 50);
  std::vector<int> alternating(10);
  for (int i = 0; i < 10; ++i) alternating[i] = i % 2;
  EXPECT_EQ(MaxHubTenure(alternating, std::vector<int>(10, 0)).at(0), 1);
  const auto split = MaxHubTenure(std::vector<int>(10, 2), {0, 0, 0, 0, 1, 1, 1, 1, 1, 1});
  EXPECT_EQ(split.at(0), 4);
  EXPECT_EQ(split.at(1), 6);
  const auto gaps = MaxHubTenure({3, 3, -1, 3, 3, 3}, std::vector<int>(6, 0));
  EXPECT_EQ(gaps.at(0), 3);
}

TEST(Quantile, Interpolates) {
  EXPECT_DOUBLE_EQ(Quantile({1, 2, 3, 4, 5}, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(Quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Quantile({7}, 0.99), 7.0);
}

TEST(TopologyNull, RetargetKeepsOutDegrees) {
  Rng rng(5);
  std::vector<std::pair<int, int>> edges;
  for (int b = 1; b < 30; ++b) edges.push_back({b, 0});
  edges.push_back({0, 1});
  edges.push_back({0, 2});
  for (int draw = 0; draw < 50; ++draw) {
    const auto null = RetargetEdges(edges, 30, rng);
    ASSERT_EQ(null.size(), edges.size());
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < null.size(); ++i) {
      EXPECT_EQ(null[i].first, edges[i].first);
      EXPECT_NE(null[i].first, null[i].second);
      EXPECT_TRUE(seen.insert(null[i]).second);
    }
  }
}

TEST(TopologyNull, StarExceedsNullUniformDoesNot) {
  EdgeSnapshot star{0, {}};
  for (int b = 1; b < 50; ++b) star.edges.push_back({b, 0});
  const HeavyTailTest hub = TopologyNullTest({star}, 50, 200, 1);
  EXPECT_EQ(hub.observed, 49.0);
  EXPECT_TRUE(hub.exceeds);
  EdgeSnapshot ring{0, {}};
  for (int b = 0; b < 50; ++b) ring.edges.push_back({b, (b + 1) % 50});
  const HeavyTailTest flat = TopologyNullTest({ring}, 50, 200, 1);
  EXPECT_EQ(flat.observed, 1.0);
  EXPECT_FALSE(flat.exceeds);
  EXPECT_EQ(MaxInDegree(star.edges, 50), 49);
}

}  // namespace
}  // namespace ibrl
