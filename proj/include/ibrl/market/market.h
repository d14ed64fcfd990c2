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

#ifndef IBRL_MARKET_MARKET_H_
#define IBRL_MARKET_MARKET_H_

#include <span>
#include <vector>

#include "ibrl/common/rng.h"
#include "ibrl/network/credit_graph.h"

namespace ibrl {

// Required reserves as a fraction of deposits.
inline constexpr double kReserveRatio = 0.02;

struct ShockParams {
  double mu = 0.7;
  double omega = 0.55;
  // Price per unit of long-term asset in a fire sale, in (0, 1].
  double fire_sale_price = 0.3;

  void Validate() const;
};

// Starting balance sheet shared by every bank at t=0 and scaled for
// entrants. The published sheet (C=30, L=120, D=135, E=15) balances only
// with zero reserves, so the reserve requirement is carved out of liquidity.
struct BalanceSheetTemplate {
  double long_assets = 120.0;
  double liquidity = 30.0 - kReserveRatio * 135.0;
  double reserves = kReserveRatio * 135.0;
  double deposits = 135.0;
  double equity = 15.0;
  double rate = 0.02;

  double TotalAssets() const { return long_assets + liquidity + reserves; }
};

struct BankState {
  int id = 0;
  double long_assets = 0.0;       // L
  double liquidity = 0.0;         // C; negative while withdrawals are uncovered
  double reserves = 0.0;          // R
  double deposits = 0.0;          // D
  double equity = 0.0;            // E
  double interbank_assets = 0.0;  // loans granted, due next period
  double interbank_debt = 0.0;    // loans received, due next period
  double posted_rate = 0.02;
  bool alive = true;

  // A = L + C + R.
  double TotalAssets() const { return long_assets + liquidity + reserves; }
  // L / E, or +inf for a bank without positive equity.
  double Leverage() const;
  // (L + C + R + loans granted) - (D + E + loans received). Interbank
  // positions only exist between matching and the next settlement.
  double IdentityResidual() const;
  // |IdentityResidual| / (|D| + |E| + 1).
  double RelativeIdentityError() const;
};

BankState MakeBank(int id, const BalanceSheetTemplate& sheet, double scale = 1.0);

struct ShockOutcome {
  BankState bank;
  double deposit_change = 0.0;
};

// D' = D (mu + omega u). Reserves are reset to 2% of D' and both deltas
// are paid through liquidity, which may turn negative.
ShockOutcome ApplyDepositShock(const BankState& bank, double u, const ShockParams& params);

enum class RoleKind { kBorrower, kLender, kNeutral };

struct Role {
  RoleKind kind = RoleKind::kNeutral;
  double amount = 0.0;  // demand for borrowers, supply for lenders
};

// Sign of (deposit_change + liquidity) decides the side of the market. A
// position of exactly zero needs nothing and offers nothing.
Role ClassifyRole(double liquidity, double deposit_change);
inline Role ClassifyRole(const BankState& bank, double deposit_change) {
  return ClassifyRole(bank.liquidity, deposit_change);
}

struct FireSaleResult {
  BankState bank;
  double raised = 0.0;
  double units_sold = 0.0;
  // True when the bank ran out of long-term assets before covering the need.
  bool exhausted = false;
};

// Sells need / rho units of long-term assets (or all of them if fewer),
// books the proceeds as liquidity and the (1 - rho) haircut against equity.
FireSaleResult FireSale(const BankState& bank, double need, double rho);

struct Loan {
  int lender = 0;
  int borrower = 0;
  double principal = 0.0;
  double rate = 0.0;
  double capacity = 0.0;  // credit line size when granted
};

struct BadDebt {
  int lender = 0;
  int borrower = 0;
  double amount = 0.0;
};

// Flows recorded over one period.
struct PeriodLedger {
  std::vector<double> demand;      // per bank
  std::vector<double> supply;      // per bank, at classification time
  std::vector<double> received;    // per bank, interbank funds obtained
  std::vector<double> fire_sales;  // per bank, units of L sold
  std::vector<double> deposit_multiplier;  // per bank, NaN when not shocked
  std::vector<Loan> loans;
  std::vector<BadDebt> bad_debts;
  std::vector<int> failures;
  double repaid = 0.0;
  double rationing = 0.0;  // mean unmet fraction over borrowers

  void Reset(int num_banks);
  double TotalBadDebt() const;
  int NumBorrowers() const;
};

struct MarketState {
  std::vector<BankState> banks;
  CreditGraph graph;
  std::vector<Loan> outstanding;
  int period = 0;

  int size() const { return static_cast<int>(banks.size()); }
  int NumAlive() const;
  std::vector<bool> AliveMask() const;
};

// Repays last period's loans in ascending borrower id. A borrower short of
// cash fire-sells; if that still falls short it defaults, the lender books
// the remainder as bad debt and the borrower is marked failed.
void SettleRepayments(MarketState& market, PeriodLedger& ledger, double rho);

struct EntryParams {
  BalanceSheetTemplate sheet;
  double isolation_prob = 0.25;
  int histogram_bins = 10;
  double scale_low = 0.9;
  double scale_high = 1.1;
};

// Mode of the total-asset distribution: midpoint of the tallest of `bins`
// equal-width bins (ties go to the lower bin).
double SizeMode(std::span<const double> sizes, int bins);

// Marks every alive bank with negative equity as failed, then replaces each
// failed bank by an entrant in the same slot. Returns the replaced ids.
std::vector<int> ResolveFailuresAndEntry(MarketState& market, PeriodLedger& ledger,
                                         const EntryParams& params, Rng& rng);

}  // namespace ibrl

#endif  // IBRL_MARKET_MARKET_H_
