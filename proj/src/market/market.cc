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

#include "ibrl/market/market.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ibrl {

void ShockParams::Validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("ShockParams: mu must be positive");
  if (!(omega >= 0.0)) throw std::invalid_argument("ShockParams: omega must be non-negative");
  if (!(fire_sale_price > 0.0 && fire_sale_price <= 1.0)) {
    throw std::invalid_argument("ShockParams: fire_sale_price must lie in (0, 1]");
  }
}

double BankState::Leverage() const {
  if (equity <= 0.0) return std::numeric_limits<double>::infinity();
  return long_assets / equity;
}

double BankState::IdentityResidual() const {
  return (long_assets + liquidity + reserves + interbank_assets) -
         (deposits + equity + interbank_debt);
}

double BankState::RelativeIdentityError() const {
  return std::abs(IdentityResidual()) / (std::abs(deposits) + std::abs(equity) + 1.0);
}

BankState MakeBank(int id, const BalanceSheetTemplate& sheet, double scale) {
  BankState bank;
  bank.id = id;
  bank.long_assets = sheet.long_assets * scale;
  bank.liquidity = sheet.liquidity * scale;
  bank.reserves = sheet.reserves * scale;
  bank.deposits = sheet.deposits * scale;
  bank.equity = sheet.equity * scale;
  bank.posted_rate = sheet.rate;
  bank.alive = true;
  return bank;
}

ShockOutcome ApplyDepositShock(const BankState& bank, double u, const ShockParams& params) {
  ShockOutcome out{bank, 0.0};
  const double new_deposits = bank.deposits * (params.mu + params.omega * u);
  const double new_reserves = kReserveRatio * new_deposits;
  out.deposit_change = new_deposits - bank.deposits;
  out.bank.liquidity += out.deposit_change - (new_reserves - bank.reserves);
  out.bank.deposits = new_deposits;
  out.bank.reserves = new_reserves;
  return out;
}

Role ClassifyRole(double liquidity, double deposit_change) {
  const double position = deposit_change + liquidity;
  if (position > 0.0) return {RoleKind::kLender, position};
  if (position < 0.0) return {RoleKind::kBorrower, -position};
  return {RoleKind::kNeutral, 0.0};
}

FireSaleResult FireSale(const BankState& bank, double need, double rho) {
  FireSaleResult out{bank, 0.0, 0.0, false};
  if (!(need > 0.0)) return out;
  const double wanted = need / rho;
  const double sold = std::min(std::max(bank.long_assets, 0.0), wanted);
  out.units_sold = sold;
  out.raised = sold * rho;
  out.exhausted = sold < wanted;
  out.bank.long_assets -= sold;
  out.bank.liquidity += out.raised;
  out.bank.equity -= (1.0 - rho) * sold;
  return out;
}

void PeriodLedger::Reset(int num_banks) {
  const auto n = static_cast<size_t>(num_banks);
  demand.assign(n, 0.0);
  supply.assign(n, 0.0);
  received.assign(n, 0.0);
  fire_sales.assign(n, 0.0);
  deposit_multiplier.assign(n, std::numeric_limits<double>::quiet_NaN());
  loans.clear();
  bad_debts.clear();
  failures.clear();
  repaid = 0.0;
  rationing = 0.0;
}

double PeriodLedger::TotalBadDebt() const {
  double total = 0.0;
  for (const auto& b : bad_debts) total += b.amount;
  return total;
}

int PeriodLedger::NumBorrowers() const {
  return static_cast<int>(std::count_if(demand.begin(), demand.end(),
                                        [](double d) { return d > 0.0; }));
}

int MarketState::NumAlive() const {
  return static_cast<int>(
      std::count_if(banks.begin(), banks.end(), [](const BankState& b) { return b.alive; }));
}

std::vector<bool> MarketState::AliveMask() const {
  std::vector<bool> mask(banks.size());
  for (size_t i = 0; i < banks.size(); ++i) mask[i] = banks[i].alive;
  return mask;
}

void SettleRepayments(MarketState& market, PeriodLedger& ledger, double rho) {
  auto loans = std::move(market.outstanding);
  market.outstanding.clear();
  std::sort(loans.begin(), loans.end(), [](const Loan& a, const Loan& b) {
    return a.borrower != b.borrower ? a.borrower < b.borrower : a.lender < b.lender;
  });
  for (const Loan& loan : loans) {
    BankState& borrower = market.banks.at(loan.borrower);
    BankState& lender = market.banks.at(loan.lender);
    const double interest = loan.principal * loan.rate;
    const double due = loan.principal + interest;
    borrower.equity -= interest;
    borrower.interbank_debt += interest;

    double cash = std::max(borrower.liquidity, 0.0);
    if (cash < due) {
      FireSaleResult sale = FireSale(borrower, due - cash, rho);
      borrower = sale.bank;
      ledger.fire_sales.at(loan.borrower) += sale.units_sold;
      cash = std::max(borrower.liquidity, 0.0);
    }
    const double paid = std::min(due, cash);
    borrower.liquidity -= paid;
    borrower.interbank_debt -= paid;
    lender.liquidity += paid;
    lender.interbank_assets -= loan.principal;
    lender.equity += paid - loan.principal;
    ledger.repaid += paid;

    if (paid < due * (1.0 - 1e-12)) {
      ledger.bad_debts.push_back({loan.lender, loan.borrower, due - paid});
      if (borrower.alive) {
        borrower.alive = false;
        ledger.failures.push_back(loan.borrower);
      }
    }
  }
}

double SizeMode(std::span<const double> sizes, int bins) {
  if (sizes.empty()) throw std::invalid_argument("SizeMode: empty sample");
  if (bins < 1) throw std::invalid_argument("SizeMode: bins < 1");
  const auto [lo_it, hi_it] = std::minmax_element(sizes.begin(), sizes.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return lo;
  const double width = (hi - lo) / bins;
  std::vector<int> counts(static_cast<size_t>(bins), 0);
  for (double s : sizes) {
    int b = static_cast<int>((s - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    ++counts[static_cast<size_t>(b)];
  }
  const auto tallest = std::max_element(counts.begin(), counts.end());
  const auto idx = static_cast<double>(tallest - counts.begin());
  return lo + (idx + 0.5) * width;
}

std::vector<int> ResolveFailuresAndEntry(MarketState& market, PeriodLedger& ledger,
                                         const EntryParams& params, Rng& rng) {
  for (auto& bank : market.banks) {
    if (bank.alive && bank.equity < 0.0) {
      bank.alive = false;
      ledger.failures.push_back(bank.id);
    }
  }
  std::vector<int> replaced;
  std::vector<double> incumbent_sizes;
  for (const auto& bank : market.banks) {
    if (bank.alive) {
      incumbent_sizes.push_back(bank.TotalAssets());
    } else {
      replaced.push_back(bank.id);
    }
  }
  if (replaced.empty()) return replaced;

  const double template_size = params.sheet.TotalAssets();
  const double mode = incumbent_sizes.empty()
                          ? template_size
                          : SizeMode(incumbent_sizes, params.histogram_bins);
  for (int id : replaced) {
    const double u = rng.Uniform();
    const double size = mode * (params.scale_low + (params.scale_high - params.scale_low) * u);
    market.banks.at(id) = MakeBank(id, params.sheet, size / template_size);
    market.graph.RemoveInLinks(id);
    market.graph.ClearOutLinks(id);
  }
  const std::vector<bool> alive = market.AliveMask();
  for (int id : replaced) {
    DrawInitialLinks(market.graph, alive, id, params.isolation_prob, rng);
  }
  return replaced;
}

}  // namespace ibrl
