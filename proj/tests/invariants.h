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


// Model invariants checked step by step over whole episodes. Shared by the
// unit tests and the acceptance driver.

#ifndef IBRL_TESTS_INVARIANTS_H_
#define IBRL_TESTS_INVARIANTS_H_

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ibrl/common/rng.h"
#include "ibrl/env/environment.h"

namespace ibrl::testing {

struct InvariantReport {
  long checks = 0;
  long violations = 0;
  std::vector<std::string> first;  // up to 10 messages

  void Check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (first.size() < 10) first.push_back(what);
  }
};

// Runs one episode with actions drawn from Bernoulli(0.5) and checks every
// period: balance-sheet identity, deposit multiplier in [mu, mu + omega),
// fitness in [0, 1], reward in [0, N], out-degree <= max, and every loan
// bounded by the lender's supply, the borrower's demand and the capacity.
inline void CheckEpisode(const MarketConfig& config, uint64_t seed, InvariantReport& report) {
  Environment env(config);
  env.set_record_ledgers(true);
  env.Reset(seed);
  Rng actions(DeriveSeed(seed, 77));
  const double lo = config.shock.mu;
  const double hi = config.shock.mu + config.shock.omega;
  constexpr double kTol = 1e-9;
  while (!env.done()) {
    const StepResult r = env.Step(actions.Bernoulli(0.5) ? 1 : 0);
    const int t = env.period();
    auto where = [&](const std::string& what, int bank) {
      std::ostringstream s;
      s << "seed " << seed << " step " << t << " bank " << bank << ": " << what;
      return s.str();
    };
    const MarketState& m = env.market();
    for (const BankState& b : m.banks) {
      report.Check(b.RelativeIdentityError() < kTol, where("balance-sheet identity", b.id));
      report.Check(static_cast<int>(m.graph.Lenders(b.id).size()) <= config.max_out_degree,
                   where("out-degree", b.id));
    }
    for (size_t i = 0; i < r.info.fitness.size(); ++i) {
      const double mu = r.info.fitness[i];
      report.Check(mu >= 0.0 && mu <= 1.0, where("fitness range", static_cast<int>(i)));
    }
    report.Check(r.reward >= 0.0 && r.reward <= config.num_banks, where("reward range", -1));

    const PeriodLedger& ledger = env.trace().ledgers.back();
    for (size_t i = 0; i < ledger.deposit_multiplier.size(); ++i) {
      const double k = ledger.deposit_multiplier[i];
      if (std::isnan(k)) continue;
      report.Check(k >= lo - 1e-12 && k < hi, where("deposit multiplier band", static_cast<int>(i)));
    }
    std::vector<double> lent(ledger.supply.size(), 0.0), borrowed(ledger.demand.size(), 0.0);
    for (const Loan& loan : ledger.loans) {
      report.Check(loan.principal <= loan.capacity * (1 + kTol), where("loan above capacity", loan.borrower));
      report.Check(loan.principal > 0.0, where("empty loan", loan.borrower));
      lent[loan.lender] += loan.principal;
      borrowed[loan.borrower] += loan.principal;
    }
    for (size_t i = 0; i < lent.size(); ++i) {
      report.Check(lent[i] <= ledger.supply[i] * (1 + kTol) + kTol, where("loans above supply", static_cast<int>(i)));
      report.Check(borrowed[i] <= ledger.demand[i] * (1 + kTol) + kTol, where("loans above demand", static_cast<int>(i)));
    }
  }
}

}  // namespace ibrl::testing

#endif  // IBRL_TESTS_INVARIANTS_H_
