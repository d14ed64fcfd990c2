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

#ifndef IBRL_NETWORK_CREDIT_NETWORK_H_
#define IBRL_NETWORK_CREDIT_NETWORK_H_

#include <span>
#include <vector>

#include "ibrl/common/rng.h"
#include "ibrl/market/market.h"
#include "ibrl/network/credit_graph.h"

namespace ibrl {

// Screening costs (chi for the lender, phi for the borrower) and the
// liquidation cost of collateral.
struct LendingCosts {
  double chi = 0.015;
  double phi = 0.025;
  double xi = 0.3;
};

// Lower bound on every quoted rate; fitness divides by rates.
inline constexpr double kRateFloor = 1e-4;

// p = clamp(E / E_max, 0, 1). Throws std::domain_error("no solvent
// benchmark") when E_max <= 0.
double SurvivalProbability(double equity, double max_equity);

// Haircut h = leverage / max_leverage (0 when max_leverage is 0), capacity
// (1 - h) A, never negative.
double LendingCapacity(const BankState& borrower, double max_leverage);

// Rate at which the lender's expected profit on a credit line of size
// `capacity` is zero. Throws std::domain_error on zero capacity ("no
// lending capacity") or zero survival ("certain default").
double ZeroProfitRate(double lender_assets, double borrower_assets, double survival,
                      double capacity, const LendingCosts& costs);

// ZeroProfitRate floored at kRateFloor.
double InterestRate(double lender_assets, double borrower_assets, double survival,
                    double capacity, const LendingCosts& costs);

// Alive-bank statistics shared by rates, capacities and fitness.
struct MarketAggregates {
  double max_equity = 0.0;
  double max_leverage = 0.0;  // over banks with positive equity
  double mean_assets = 0.0;
  double mean_survival = 0.0;
  double mean_capacity = 0.0;
  int alive = 0;
};

MarketAggregates ComputeAggregates(const MarketState& market);

// Quoted rate of every alive bank toward a reference borrower whose size,
// survival probability and capacity are the alive-bank averages. Banks keep
// their previous quote when the reference borrower has no capacity.
void UpdatePostedRates(MarketState& market, const LendingCosts& costs);

struct FitnessInputs {
  std::span<const double> liquidity;
  std::span<const double> rate;
  double eta = 0.0;
  double max_liquidity = 0.0;
  double min_rate = 0.0;
};

// Builds inputs over the alive banks: negative liquidity counts as zero,
// dead banks are excluded from the maxima/minima.
FitnessInputs MakeFitnessInputs(std::span<const double> liquidity, std::span<const double> rate,
                                const std::vector<bool>& alive, double eta);

// mu = eta C / C_max + (1 - eta) r_min / r. The liquidity term is 0 for
// every bank when C_max is 0.
double Fitness(const FitnessInputs& inputs, int bank_id);

// Fitness of every bank (0 for dead ones) for the current balance sheets.
std::vector<double> ComputeFitness(const MarketState& market, double eta);

struct RewireParams {
  double beta = 5.0;
  double isolation_prob = 0.25;
};

// 1 / (1 + exp(-beta (candidate - current))).
double SwitchProbability(double beta, double candidate_fitness, double current_fitness);

// One preferential-attachment round. Each alive borrower, for each of its
// links, compares a uniformly drawn candidate (not itself, not a current
// lender) against the current lender. Empty slots compare the candidate
// against a phantom lender with the mean alive fitness. Returns the number
// of links created or switched.
int Rewire(CreditGraph& graph, std::span<const double> fitness, const std::vector<bool>& alive,
           double beta, Rng& rng);

// Grants l = min(remaining supply, remaining demand, capacity) along each
// borrower -> lender link (borrowers in ascending id), books the loans as
// outstanding, fire-sells the residual demand and marks borrowers that
// cannot cover it as failed. ledger.demand/supply must be filled in.
void MatchLoans(MarketState& market, PeriodLedger& ledger, const LendingCosts& costs,
                double rho);

}  // namespace ibrl

#endif  // IBRL_NETWORK_CREDIT_NETWORK_H_
