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

#include "ibrl/env/environment.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ibrl {

void MarketConfig::Validate() const {
  if (num_banks < 3) throw std::invalid_argument("num_banks must be at least 3");
  if (max_out_degree < 1) throw std::invalid_argument("max_out_degree must be at least 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  shock.Validate();
  if (!std::isfinite(beta) || beta < 0.0) throw std::invalid_argument("beta must be finite, >= 0");
  if (!(isolation_prob >= 0.0 && isolation_prob <= 1.0)) {
    throw std::invalid_argument("isolation_prob must lie in [0, 1]");
  }
  if (snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
}

EntryParams MarketConfig::Entry() const {
  EntryParams entry;
  entry.sheet = sheet;
  entry.isolation_prob = isolation_prob;
  return entry;
}

std::array<double, kObservationSize> MdpObservation::ToVector() const {
  return {c_max, c_min, r_max, c_avg, r_min, r_avg};
}

MdpObservation MdpObservation::FromVector(const std::array<double, kObservationSize>& v) {
  MdpObservation o;
  o.c_max = v[0];
  o.c_min = v[1];
  o.r_max = v[2];
  o.c_avg = v[3];
  o.r_min = v[4];
  o.r_avg = v[5];
  return o;
}

MdpObservation Observe(const MarketState& market) {
  MdpObservation o;
  o.c_max = o.r_max = -std::numeric_limits<double>::infinity();
  o.c_min = o.r_min = std::numeric_limits<double>::infinity();
  int alive = 0;
  for (const auto& bank : market.banks) {
    if (!bank.alive) continue;
    ++alive;
    o.c_max = std::max(o.c_max, bank.liquidity);
    o.c_min = std::min(o.c_min, bank.liquidity);
    o.c_avg += bank.liquidity;
    o.r_max = std::max(o.r_max, bank.posted_rate);
    o.r_min = std::min(o.r_min, bank.posted_rate);
    o.r_avg += bank.posted_rate;
  }
  if (alive == 0) throw std::invalid_argument("Observe: no alive bank");
  o.c_avg /= alive;
  o.r_avg /= alive;
  // Keep min <= avg <= max exact under rounding.
  o.c_avg = std::clamp(o.c_avg, o.c_min, o.c_max);
  o.r_avg = std::clamp(o.r_avg, o.r_min, o.r_max);
  return o;
}

double EpisodeTrace::CumulativeReward() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.result.reward;
  return total;
}

std::vector<HubPoint> HubSeries(const EpisodeTrace& trace) {
  std::vector<HubPoint> series;
  series.reserve(trace.steps.size());
  for (const auto& s : trace.steps) {
    const auto& info = s.result.info;
    std::vector<bool> alive(info.in_degrees.size(), true);
    series.push_back(FindHub(info.in_degrees, info.fitness, alive));
  }
  return series;
}

Environment::Environment(MarketConfig config) : config_(std::move(config)) {
  config_.Validate();
}

MdpObservation Environment::Reset(uint64_t seed) {
  rng_ = Rng(DeriveSeed(seed, 0));
  market_ = MarketState{};
  market_.graph = CreditGraph(config_.num_banks, config_.max_out_degree);
  for (int i = 0; i < config_.num_banks; ++i) market_.banks.push_back(MakeBank(i, config_.sheet));
  const std::vector<bool> alive(static_cast<size_t>(config_.num_banks), true);
  for (int i = 0; i < config_.num_banks; ++i) {
    DrawInitialLinks(market_.graph, alive, i, config_.isolation_prob, rng_);
  }
  period_ = 0;
  started_ = true;
  trace_ = EpisodeTrace{};
  trace_.seed = seed;
  trace_.num_banks = config_.num_banks;
  last_observation_ = Observe(market_);
  if (record_trace_ && config_.snapshot_every > 0) {
    trace_.snapshots.push_back({0, market_.graph.Edges()});
  }
  return last_observation_;
}

StepResult Environment::Step(int eta) {
  if (!started_) throw std::logic_error("environment not reset");
  if (done()) throw std::logic_error("episode finished");
  if (eta != 0 && eta != 1) throw std::invalid_argument("eta must be 0 or 1");
  const MdpObservation prior = last_observation_;
  ++period_;
  market_.period = period_;
  const int n = config_.num_banks;
  const double rho = config_.shock.fire_sale_price;
  ledger_.Reset(n);

  // Deposit shocks; reserves and withdrawals settle through liquidity.
  std::vector<double> deposit_change(static_cast<size_t>(n), 0.0);
  for (auto& bank : market_.banks) {
    if (!bank.alive) continue;
    const double u = rng_.Uniform();
    ShockOutcome shocked = ApplyDepositShock(bank, u, config_.shock);
    ledger_.deposit_multiplier[static_cast<size_t>(bank.id)] =
        config_.shock.mu + config_.shock.omega * u;
    deposit_change[static_cast<size_t>(bank.id)] = shocked.deposit_change;
    bank = shocked.bank;
  }

  SettleRepayments(market_, ledger_, rho);
  for (int id : ResolveFailuresAndEntry(market_, ledger_, config_.Entry(), rng_)) {
    deposit_change[static_cast<size_t>(id)] = 0.0;
  }

  for (const auto& bank : market_.banks) {
    const auto i = static_cast<size_t>(bank.id);
    const double delta = deposit_change[i];
    const Role role = ClassifyRole(bank.liquidity - delta, delta);
    if (role.kind == RoleKind::kBorrower) ledger_.demand[i] = role.amount;
    if (role.kind == RoleKind::kLender) ledger_.supply[i] = role.amount;
  }

  UpdatePostedRates(market_, config_.costs);
  std::vector<double> fitness = ComputeFitness(market_, eta);
  double reward = 0.0;
  for (double mu : fitness) reward += mu;

  const std::vector<bool> alive = market_.AliveMask();
  Rewire(market_.graph, fitness, alive, config_.beta, rng_);
  MatchLoans(market_, ledger_, config_.costs, rho);

  StepResult result;
  result.reward = reward;
  result.done = done();
  StepInfo& info = result.info;
  info.eta = eta;
  info.rationing = ledger_.rationing;
  info.failures = static_cast<int>(ledger_.failures.size());
  info.channels = static_cast<int>(ledger_.loans.size());
  info.bad_debt = ledger_.TotalBadDebt();
  int levered = 0;
  for (const auto& bank : market_.banks) {
    if (!bank.alive) continue;
    info.liquidity += bank.liquidity;
    info.equity += bank.equity;
    if (bank.equity > 0.0) {
      info.leverage += bank.Leverage();
      ++levered;
    }
  }
  if (levered > 0) info.leverage /= levered;
  // Topology as rewired this period, before matching-time failures.
  info.network = ComputeNetworkMetrics(market_.graph, alive);
  info.in_degrees = market_.graph.InDegrees();
  info.fitness = std::move(fitness);
  info.hub = FindHub(info.in_degrees, info.fitness, alive);

  if (market_.NumAlive() > 0) last_observation_ = Observe(market_);
  result.observation = last_observation_;

  if (record_trace_) {
    StepRecord record;
    record.step = period_;
    record.prior_observation = prior;
    record.result = result;
    trace_.steps.push_back(std::move(record));
    if (record_ledgers_) trace_.ledgers.push_back(ledger_);
    if (config_.snapshot_every > 0 && period_ % config_.snapshot_every == 0) {
      trace_.snapshots.push_back({period_, market_.graph.Edges()});
    }
  }
  return result;
}

}  // namespace ibrl
