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


#ifndef IBRL_ANALYSIS_EXPERIMENT_H_
#define IBRL_ANALYSIS_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ibrl/env/environment.h"
#include "ibrl/env/trace_io.h"
#include "ibrl/ppo/objective.h"
#include "ibrl/ppo/policy.h"

namespace ibrl {

struct ExperimentConfig {
  MarketConfig market;
  int replicas = 20;
  uint64_t seed = 1;

  void Validate() const;
};

// Seed of replica r: DeriveSeed(seed, 5000 + r). Shared by all strategies
// so their replicas are paired.
uint64_t ReplicaSeed(uint64_t base, int replica);

struct ReplicaResult {
  int replica = 0;
  uint64_t seed = 0;
  double cumulative_reward = 0.0;
  std::vector<TraceRow> rows;
  std::vector<DetailRow> details;
  std::vector<EdgeSnapshot> snapshots;
};

struct ExperimentResult {
  std::string strategy;
  std::vector<ReplicaResult> replicas;
};

// M independent episodes. The parallel path distributes replicas over
// threads and stores each at its own index, so both paths give identical
// results.
ExperimentResult RunExperiment(const ExperimentConfig& config, const Strategy& strategy, Exec exec);

// Macro variables summarised per replica (time means) and across replicas.
inline constexpr const char* kSummaryMetrics[] = {
    "cumulative_reward", "liquidity", "liquidity_cumulative", "channels", "leverage",
    "rationing", "failures", "failures_cumulative", "bad_debt", "equity",
    "centrality", "density", "diameter", "eta_share"};

struct MetricSummary {
  std::string metric;
  double mean = 0.0;  // over replicas of the per-replica value
  double std = 0.0;   // sample std over replicas
};

// Per-replica values of one summary metric.
std::vector<double> ReplicaMetric(const ExperimentResult& result, const std::string& metric);
std::vector<MetricSummary> Summarize(const ExperimentResult& result);

// Per-step mean and std over replicas of every trace column:
// step,<column>_mean,<column>_std,...
void WriteStepAggregate(std::ostream& out, const ExperimentResult& result);
// strategy,metric,mean,std
void WriteSummary(std::ostream& out, const std::string& strategy,
                  const std::vector<MetricSummary>& summary);

// Writes replica_<r>_trace.csv, replica_<r>_detail.csv, replica_<r>_edges.csv
// (when snapshots exist), aggregate.csv and summary.csv into dir. Returns
// the written paths.
std::vector<std::string> WriteExperiment(const ExperimentResult& result, const std::string& dir);

std::string ReplicaFileName(int replica, const std::string& kind);

// Swept parameters and their grids.
std::vector<double> SweepGrid(const std::string& parameter);
MarketConfig WithParameter(const MarketConfig& base, const std::string& parameter, double value);

struct SweepRow {
  std::string parameter;
  double value = 0.0;
  std::string strategy;
  std::vector<MetricSummary> summary;
};

std::vector<SweepRow> Sweep(const ExperimentConfig& base, const std::string& parameter,
                            const std::vector<double>& grid,
                            const std::vector<const Strategy*>& strategies, Exec exec);
// parameter,value,strategy,<metric>_mean,<metric>_std for the sweep metrics.
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace ibrl

#endif  // IBRL_ANALYSIS_EXPERIMENT_H_
