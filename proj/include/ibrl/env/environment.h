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

#ifndef IBRL_ENV_ENVIRONMENT_H_
#define IBRL_ENV_ENVIRONMENT_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "ibrl/common/rng.h"
#include "ibrl/market/market.h"
#include "ibrl/network/credit_network.h"
#include "ibrl/network/metrics.h"

namespace ibrl {

struct MarketConfig {
  int num_banks = 50;
  int max_out_degree = 1;
  int horizon = 1000;
  ShockParams shock;
  LendingCosts costs;
  double beta = 5.0;
  double isolation_prob = 0.25;
  BalanceSheetTemplate sheet;
  // Edge-list snapshot cadence in steps; 0 disables snapshots.
  int snapshot_every = 0;

  void Validate() const;
  EntryParams Entry() const;
};

inline constexpr int kObservationSize = 6;

// Regulator's view of the system: extremes and averages of liquidity and
// quoted rates over alive banks.
struct MdpObservation {
  double c_max = 0.0;
  double c_min = 0.0;
  double c_avg = 0.0;
  double r_max = 0.0;
  double r_min = 0.0;
  double r_avg = 0.0;

  // (C_max, C_min, r_max, C_avg, r_min, r_avg).
  std::array<double, kObservationSize> ToVector() const;
  static MdpObservation FromVector(const std::array<double, kObservationSize>& v);
  bool operator==(const MdpObservation&) const = default;
};

// Names in ToVector() order.
inline constexpr std::array<std::string_view, kObservationSize> kFeatureNames = {
    "c_max", "c_min", "r_max", "c_avg", "r_min", "r_avg"};

MdpObservation Observe(const MarketState& market);

struct StepInfo {
  int eta = 0;
  double liquidity = 0.0;  // sum over alive banks at the end of the period
  double rationing = 0.0;
  int failures = 0;
  double leverage = 0.0;  // mean L/E over alive banks with positive equity
  int channels = 0;       // loans granted
  double bad_debt = 0.0;
  double equity = 0.0;
  NetworkMetrics network;
  HubPoint hub;
  std::vector<int> in_degrees;
  std::vector<double> fitness;
};

struct StepResult {
  MdpObservation observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

struct EdgeSnapshot {
  int step = 0;
  std::vector<std::pair<int, int>> edges;  // (borrower, lender)
};

struct StepRecord {
  int step = 0;
  MdpObservation prior_observation;  // what the action was chosen on
  StepResult result;
};

struct EpisodeTrace {
  uint64_t seed = 0;
  int num_banks = 0;
  std::vector<StepRecord> steps;
  std::vector<PeriodLedger> ledgers;  // empty unless ledgers are recorded
  std::vector<EdgeSnapshot> snapshots;

  double CumulativeReward() const;
};

// Per-step hub (most incoming links, lowest id on ties) with its in-degree
// and fitness.
std::vector<HubPoint> HubSeries(const EpisodeTrace& trace);

// One simulated market as an episodic decision process. Each Step runs one
// period: deposit shocks, repayment of last period's loans, exit and entry,
// role classification, rate quotes and fitness under the chosen eta,
// rewiring, and loan matching with fire sales.
class Environment {
 public:
  explicit Environment(MarketConfig config);

  MdpObservation Reset(uint64_t seed);
  StepResult Step(int eta);

  bool done() const { return period_ >= config_.horizon; }
  int period() const { return period_; }
  const MarketConfig& config() const { return config_; }
  const MarketState& market() const { return market_; }
  const EpisodeTrace& trace() const { return trace_; }
  EpisodeTrace TakeTrace() { return std::move(trace_); }

  void set_record_ledgers(bool record) { record_ledgers_ = record; }
  void set_record_trace(bool record) { record_trace_ = record; }

 private:
  MarketConfig config_;
  MarketState market_;
  Rng rng_;
  PeriodLedger ledger_;
  EpisodeTrace trace_;
  MdpObservation last_observation_;
  int period_ = 0;
  bool started_ = false;
  bool record_ledgers_ = false;
  bool record_trace_ = true;
};

}  // namespace ibrl

#endif  // IBRL_ENV_ENVIRONMENT_H_
