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


#include "ibrl/env/trace_io.h"

#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"

namespace ibrl {

std::vector<TraceRow> TraceRows(const EpisodeTrace& trace) {
  std::vector<TraceRow> rows;
  rows.reserve(trace.steps.size());
  for (const StepRecord& rec : trace.steps) {
    const StepInfo& info = rec.result.info;
    TraceRow row;
    row.step = rec.step;
    row.eta = info.eta;
    row.reward = rec.result.reward;
    row.liquidity = info.liquidity;
    row.rationing = info.rationing;
    row.failures = info.failures;
    row.leverage = info.leverage;
    row.channels = info.channels;
    row.centrality = info.network.centrality;
    row.density = info.network.density;
    row.diameter = info.network.diameter;
    row.components = info.network.components;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DetailRow> DetailRows(const EpisodeTrace& trace) {
  std::vector<DetailRow> rows;
  rows.reserve(trace.steps.size());
  for (const StepRecord& rec : trace.steps) {
    const StepInfo& info = rec.result.info;
    DetailRow row;
    row.step = rec.step;
    row.bad_debt = info.bad_debt;
    row.equity = info.equity;
    row.max_in_degree = info.network.max_in_degree;
    row.hub_id = info.hub.hub_id;
    row.hub_in_degree = info.hub.hub_in_degree;
    row.hub_fitness = info.hub.hub_fitness;
    row.observation = rec.prior_observation.ToVector();
    rows.push_back(row);
  }
  return rows;
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    WriteRow(out, {FormatNumber(r.step), FormatNumber(r.eta), FormatNumber(r.reward),
                   FormatNumber(r.liquidity), FormatNumber(r.rationing),
                   FormatNumber(r.failures), FormatNumber(r.leverage),
                   FormatNumber(r.channels), FormatNumber(r.centrality),
                   FormatNumber(r.density), FormatNumber(r.diameter),
                   FormatNumber(r.components)});
  }
}

void WriteDetailCsv(std::ostream& out, const std::vector<DetailRow>& rows) {
  std::vector<std::string> header = {"step",          "bad_debt", "equity",
                                     "max_in_degree", "hub_id",   "hub_in_degree",
                                     "hub_fitness"};
  for (auto name : kFeatureNames) header.emplace_back(name);
  WriteRow(out, header);
  for (const DetailRow& r : rows) {
    std::vector<std::string> f = {FormatNumber(r.step),          FormatNumber(r.bad_debt),
                                  FormatNumber(r.equity),        FormatNumber(r.max_in_degree),
                                  FormatNumber(r.hub_id),        FormatNumber(r.hub_in_degree),
                                  FormatNumber(r.hub_fitness)};
    for (double v : r.observation) f.push_back(FormatNumber(v));
    WriteRow(out, f);
  }
}

void WriteEdgeCsv(std::ostream& out, const std::vector<EdgeSnapshot>& snapshots) {
  out << "step,borrower,lender\n";
  for (const EdgeSnapshot& snap : snapshots) {
    for (const auto& [borrower, lender] : snap.edges) {
      out << snap.step << ',' << borrower << ',' << lender << '\n';
    }
  }
}

std::vector<TraceRow> ReadTraceCsv(const std::string& path) {
  CsvTable t = CsvTable::ReadFile(path);
  const size_t c_step = t.Column("step"), c_eta = t.Column("eta"),
               c_reward = t.Column("reward"), c_liq = t.Column("liquidity"),
               c_rat = t.Column("rationing"), c_fail = t.Column("failures"),
               c_lev = t.Column("leverage"), c_chan = t.Column("channels"),
               c_cent = t.Column("centrality"), c_dens = t.Column("density"),
               c_diam = t.Column("diameter"), c_comp = t.Column("components");
  std::vector<TraceRow> rows(t.rows());
  for (size_t i = 0; i < t.rows(); ++i) {
    TraceRow& r = rows[i];
    r.step = static_cast<int>(t.Number(i, c_step));
    r.eta = static_cast<int>(t.Number(i, c_eta));
    r.reward = t.Number(i, c_reward);
    r.liquidity = t.Number(i, c_liq);
    r.rationing = t.Number(i, c_rat);
    r.failures = static_cast<int>(t.Number(i, c_fail));
    r.leverage = t.Number(i, c_lev);
    r.channels = static_cast<int>(t.Number(i, c_chan));
    r.centrality = t.Number(i, c_cent);
    r.density = t.Number(i, c_dens);
    r.diameter = t.Number(i, c_diam);
    r.components = static_cast<int>(t.Number(i, c_comp));
  }
  return rows;
}

std::vector<DetailRow> ReadDetailCsv(const std::string& path) {
  CsvTable t = CsvTable::ReadFile(path);
  std::vector<size_t> obs_cols;
  for (auto name : kFeatureNames) obs_cols.push_back(t.Column(name));
  const size_t c_step = t.Column("step"), c_bad = t.Column("bad_debt"),
               c_eq = t.Column("equity"), c_maxin = t.Column("max_in_degree"),
               c_hub = t.Column("hub_id"), c_hubin = t.Column("hub_in_degree"),
               c_hubfit = t.Column("hub_fitness");
  std::vector<DetailRow> rows(t.rows());
  for (size_t i = 0; i < t.rows(); ++i) {
    DetailRow& r = rows[i];
    r.step = static_cast<int>(t.Number(i, c_step));
    r.bad_debt = t.Number(i, c_bad);
    r.equity = t.Number(i, c_eq);
    r.max_in_degree = static_cast<int>(t.Number(i, c_maxin));
    r.hub_id = static_cast<int>(t.Number(i, c_hub));
    r.hub_in_degree = static_cast<int>(t.Number(i, c_hubin));
    r.hub_fitness = t.Number(i, c_hubfit);
    for (int k = 0; k < kObservationSize; ++k) r.observation[k] = t.Number(i, obs_cols[k]);
  }
  return rows;
}

}  // namespace ibrl
