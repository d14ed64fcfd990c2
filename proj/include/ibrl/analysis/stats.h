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


#ifndef IBRL_ANALYSIS_STATS_H_
#define IBRL_ANALYSIS_STATS_H_

#include <map>
#include <string>
#include <vector>

namespace ibrl {

double Mean(const std::vector<double>& x);
// n-1 denominator; 0 for fewer than two values.
double SampleStd(const std::vector<double>& x);

struct RollingSeries {
  std::vector<double> mean;  // entry i covers x[i .. i + window - 1]
  std::vector<double> std;   // sample std within the window
};

// Trailing window statistics, reported from index window-1 onward.
RollingSeries Rolling(const std::vector<double>& x, int window);

struct RegressionResult {
  double b0 = 0.0;  // intercept
  double b1 = 0.0;  // slope
  double se0 = 0.0;
  double se1 = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  double p0 = 1.0;  // two-sided
  double p1 = 1.0;
  double r2 = 0.0;
  size_t n = 0;
};

// "***" below 1%, "**" below 5%, "*" below 10%.
std::string SignificanceStars(double p);

// y = b0 + b1 x with homoskedastic OLS standard errors.
RegressionResult SimpleOls(const std::vector<double>& y, const std::vector<double>& x);

// y = b0 + b1 (1 - eta): b0 is the mean under eta=1 and b1 the shift when
// eta=0.
RegressionResult CategoricalRegression(const std::vector<double>& y, const std::vector<int>& eta);

struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
};

// Kolmogorov limiting survival function Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double KolmogorovSurvival(double lambda);

// Two-sample statistic sup|F_a - F_b| with the asymptotic p-value at
// lambda = (sqrt(m) + 0.12 + 0.11 / sqrt(m)) D, m = n_a n_b / (n_a + n_b).
KsResult KsTwoSample(std::vector<double> a, std::vector<double> b);

struct LagCorrelation {
  int lag = 0;
  bool defined = false;
  double corr = 0.0;
  double p_value = 1.0;
  bool significant = false;
  size_t n = 0;
};

// Pearson correlation of x_t with y_{t+lag} for lag in [-max_lag, max_lag],
// tested with a t statistic on n-2 degrees of freedom.
std::vector<LagCorrelation> LaggedCorrelation(const std::vector<double>& x,
                                              const std::vector<double>& y, int max_lag,
                                              double alpha);

// Longest run of consecutive steps with one hub while eta stays constant,
// per eta value. Steps without a hub (id < 0) break runs. Eta values that
// never occur are absent from the map.
std::map<int, int> MaxHubTenure(const std::vector<int>& hub_ids, const std::vector<int>& etas);

// Linear-interpolated quantile, q in [0, 1].
double Quantile(std::vector<double> x, double q);

}  // namespace ibrl

#endif  // IBRL_ANALYSIS_STATS_H_
