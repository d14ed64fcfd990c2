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

#include "ibrl/network/credit_network.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ibrl {

double SurvivalProbability(double equity, double max_equity) {
  if (!(max_equity > 0.0)) throw std::domain_error("no solvent benchmark");
  return std::clamp(equity / max_equity, 0.0, 1.0);
}

double LendingCapacity(const BankState& borrower, double max_leverage) {
  double haircut = 0.0;
  if (max_leverage > 0.0) {
    const double leverage = borrower.Leverage();
    haircut = std::isfinite(leverage) ? std::clamp(leverage / max_leverage, 0.0, 1.0) : 1.0;
  }
  return std::max(0.0, (1.0 - haircut) * borrower.TotalAssets());
}

double ZeroProfitRate(double lender_assets, double borrower_assets, double survival,
                      double capacity, const LendingCosts& costs) {
  if (!(capacity > 0.0)) throw std::domain_error("no lending capacity");
  if (!(survival > 0.0)) throw std::domain_error("certain default");
  const double numerator = costs.chi * lender_assets - costs.phi * borrower_assets -
                           (1.0 - survival) * (costs.xi * borrower_assets - capacity);
  return numerator / (survival * capacity);
}

double InterestRate(double lender_assets, double borrower_assets, double survival,
                    double capacity, const LendingCosts& costs) {
  return std::max(kRateFloor,
                  ZeroProfitRate(lender_assets, borrower_assets, survival, capacity, costs));
}

MarketAggregates ComputeAggregates(const MarketState& market) {
  MarketAggregates agg;
  agg.max_equity = -std::numeric_limits<double>::infinity();
  for (const auto& bank : market.banks) {
    if (!bank.alive) continue;
    ++agg.alive;
    agg.max_equity = std::max(agg.max_equity, bank.equity);
    const double leverage = bank.Leverage();
    if (std::isfinite(leverage)) agg.max_leverage = std::max(agg.max_leverage, leverage);
  }
  if (agg.alive == 0) {
    agg.max_equity = 0.0;
    return agg;
  }
  for (const auto& bank : market.banks) {
    if (!bank.alive) continue;
    agg.mean_assets += bank.TotalAssets();
    if (agg.max_equity > 0.0) agg.mean_survival += SurvivalProbability(bank.equity, agg.max_equity);
    agg.mean_capacity += LendingCapacity(bank, agg.max_leverage);
  }
  agg.mean_assets /= agg.alive;
  agg.mean_survival /= agg.alive;
  agg.mean_capacity /= agg.alive;
  return agg;
}

void UpdatePostedRates(MarketState& market, const LendingCosts& costs) {
  const MarketAggregates agg = ComputeAggregates(market);
  if (!(agg.mean_capacity > 0.0) || !(agg.mean_survival > 0.0)) return;
  for (auto& bank : market.banks) {
    if (!bank.alive) continue;
    bank.posted_rate = InterestRate(bank.TotalAssets(), agg.mean_assets, agg.mean_survival,
                                    agg.mean_capacity, costs);
  }
}

FitnessInputs MakeFitnessInputs(std::span<const double> liquidity, std::span<const double> rate,
                                const std::vector<bool>& alive, double eta) {
  FitnessInputs in{liquidity, rate, eta, 0.0, std::numeric_limits<double>::infinity()};
  for (size_t i = 0; i < liquidity.size(); ++i) {
    if (!alive[i]) continue;
    in.max_liquidity = std::max(in.max_liquidity, std::max(liquidity[i], 0.0));
    in.min_rate = std::min(in.min_rate, rate[i]);
  }
  return in;
}

double Fitness(const FitnessInputs& in, int bank_id) {
  const auto i = static_cast<size_t>(bank_id);
  const double liquidity_term =
      in.max_liquidity > 0.0 ? std::max(in.liquidity[i], 0.0) / in.max_liquidity : 0.0;
  const double rate_term = in.min_rate / in.rate[i];
  return in.eta * liquidity_term + (1.0 - in.eta) * rate_term;
}

std::vector<double> ComputeFitness(const MarketState& market, double eta) {
  const size_t n = market.banks.size();
  std::vector<double> liquidity(n), rate(n), fitness(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    liquidity[i] = market.banks[i].liquidity;
    rate[i] = market.banks[i].posted_rate;
  }
  const std::vector<bool> alive = market.AliveMask();
  const FitnessInputs in = MakeFitnessInputs(liquidity, rate, alive, eta);
  for (size_t i = 0; i < n; ++i) {
    if (alive[i]) fitness[i] = Fitness(in, static_cast<int>(i));
  }
  return fitness;
}

double SwitchProbability(double beta, double candidate_fitness, double current_fitness) {
  return 1.0 / (1.0 + std::exp(-beta * (candidate_fitness - current_fitness)));
}

int Rewire(CreditGraph& graph, std::span<const double> fitness, const std::vector<bool>& alive,
           double beta, Rng& rng) {
  double mean_fitness = 0.0;
  int alive_count = 0;
  for (int i = 0; i < graph.size(); ++i) {
    if (alive[static_cast<size_t>(i)]) {
      mean_fitness += fitness[static_cast<size_t>(i)];
      ++alive_count;
    }
  }
  if (alive_count == 0) return 0;
  mean_fitness /= alive_count;

  int changes = 0;
  std::vector<int> candidates;
  for (int j = 0; j < graph.size(); ++j) {
    if (!alive[static_cast<size_t>(j)]) continue;
    const std::vector<int> current = graph.Lenders(j);
    const int slots = graph.max_out_degree();
    for (int slot = 0; slot < slots; ++slot) {
      const bool linked = slot < static_cast<int>(current.size());
      candidates.clear();
      for (int k = 0; k < graph.size(); ++k) {
        if (k == j || !alive[static_cast<size_t>(k)] || graph.HasLink(j, k)) continue;
        candidates.push_back(k);
      }
      if (candidates.empty()) continue;
      const int k = candidates[static_cast<size_t>(rng.UniformInt(static_cast<int>(candidates.size())))];
      const double reference =
          linked ? fitness[static_cast<size_t>(current[static_cast<size_t>(slot)])] : mean_fitness;
      if (rng.Uniform() < SwitchProbability(beta, fitness[static_cast<size_t>(k)], reference)) {
        if (linked) {
          graph.ReplaceLink(j, current[static_cast<size_t>(slot)], k);
        } else {
          graph.AddLink(j, k);
        }
        ++changes;
      }
    }
  }
  return changes;
}

void MatchLoans(MarketState& market, PeriodLedger& ledger, const LendingCosts& costs,
                double rho) {
  const MarketAggregates agg = ComputeAggregates(market);
  const size_t n = market.banks.size();
  std::vector<double> supply_left = ledger.supply;
  std::vector<double> demand_left = ledger.demand;

  for (size_t j = 0; j < n; ++j) {
    BankState& borrower = market.banks[j];
    if (!borrower.alive || !(demand_left[j] > 0.0)) continue;
    for (int i : market.graph.Lenders(static_cast<int>(j))) {
      BankState& lender = market.banks.at(static_cast<size_t>(i));
      const auto li = static_cast<size_t>(i);
      if (!lender.alive || !(supply_left[li] > 0.0) || !(demand_left[j] > 0.0)) continue;
      if (!(agg.max_equity > 0.0)) continue;
      const double capacity = LendingCapacity(borrower, agg.max_leverage);
      const double survival = SurvivalProbability(borrower.equity, agg.max_equity);
      if (!(capacity > 0.0) || !(survival > 0.0)) continue;
      const double amount = std::min({supply_left[li], demand_left[j], capacity});
      const double rate =
          InterestRate(lender.TotalAssets(), borrower.TotalAssets(), survival, capacity, costs);
      lender.liquidity -= amount;
      lender.interbank_assets += amount;
      borrower.liquidity += amount;
      borrower.interbank_debt += amount;
      supply_left[li] -= amount;
      demand_left[j] -= amount;
      ledger.received[j] += amount;
      const Loan loan{i, static_cast<int>(j), amount, rate, capacity};
      ledger.loans.push_back(loan);
      market.outstanding.push_back(loan);
    }
  }

  double rationing_sum = 0.0;
  int borrowers = 0;
  for (size_t j = 0; j < n; ++j) {
    if (!(ledger.demand[j] > 0.0)) continue;
    ++borrowers;
    rationing_sum += demand_left[j] / ledger.demand[j];
    BankState& borrower = market.banks[j];
    const double gap = -borrower.liquidity;
    if (gap > 0.0) {
      FireSaleResult sale = FireSale(borrower, gap, rho);
      borrower = sale.bank;
      ledger.fire_sales[j] += sale.units_sold;
      if (sale.exhausted && borrower.alive) {
        borrower.alive = false;
        ledger.failures.push_back(static_cast<int>(j));
      }
    }
  }
  ledger.rationing = borrowers > 0 ? rationing_sum / borrowers : 0.0;
}

}  // namespace ibrl
