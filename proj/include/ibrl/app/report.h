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


#ifndef IBRL_APP_REPORT_H_
#define IBRL_APP_REPORT_H_

#include <string>
#include <vector>

#include "ibrl/analysis/experiment.h"
#include "ibrl/analysis/stats.h"

namespace ibrl {

// Strategy directories a run may contain, in table order.
inline constexpr const char* kStrategyOrder[] = {"learned", "random", "fixed0", "fixed1"};

// Per-step values of one column pooled over replicas (replica-major).
// Columns: any trace column plus bad_debt and equity from the detail rows.
std::vector<double> PooledSeries(const ExperimentResult& result, const std::string& column);
std::vector<int> PooledEta(const ExperimentResult& result);

struct NamedRegression {
  std::string dependent;
  std::string regressor;  // "1-eta" for the categorical model
  RegressionResult fit;
};

// y = b0 + b1 (1 - eta) for the macro and topology variables. Empty when
// eta never changes in the run.
std::vector<NamedRegression> CategoricalTable(const ExperimentResult& result);
// Univariate OLS of failures, rationing and leverage on centrality,
// density and diameter.
std::vector<NamedRegression> TopologyRegressions(const ExperimentResult& result);

struct LagSummary {
  int lag = 0;
  double mean_corr = 0.0;          // over replicas where defined
  double significant_share = 0.0;  // share of replicas significant at 1%
  int defined = 0;
};

// Correlation of leverage_t with failures_{t+lag}, averaged over replicas.
std::vector<LagSummary> LeverageFailureLags(const ExperimentResult& result, int max_lag);

struct TenureRow {
  int replica = 0;
  int eta = 0;
  int max_tenure = 0;
};
std::vector<TenureRow> HubTenures(const ExperimentResult& result);

// Reads summary-free replica files written by WriteExperiment.
ExperimentResult LoadExperiment(const std::string& dir, const std::string& strategy);

struct ReportOutput {
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  std::string text;
};

// Builds comparison, regression, KS, tenure and lag tables from the
// strategy subdirectories of run_dir. Missing inputs raise IoError listing
// them; hash mismatches become warnings.
ReportOutput BuildReport(const std::string& run_dir, const std::string& out_dir);

}  // namespace ibrl

#endif  // IBRL_APP_REPORT_H_
