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


#include "ibrl/analysis/experiment.h"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "ibrl/analysis/stats.h"
#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"

namespace ibrl {

void ExperimentConfig::Validate() const {
  market.Validate();
  if (replicas < 1) throw std::invalid_argument("replicas must be at least 1");
  if (market.horizon < 2) throw std::invalid_argument("horizon must be at least 2");
}

uint64_t ReplicaSeed(uint64_t base, int replica) {
  return DeriveSeed(base, 5000 + static_cast<uint64_t>(replica));
}

namespace {

ReplicaResult RunReplica(const ExperimentConfig& config, const Strategy& strategy, int r) {
  ReplicaResult rep;
  rep.replica = r;
  rep.seed = ReplicaSeed(config.seed, r);
  EpisodeOutcome o = RunEpisode(config.market, strategy, rep.seed, true);
  rep.cumulative_reward = o.cumulative_reward;
  rep.rows = TraceRows(o.trace);
  rep.details = DetailRows(o.trace);
  rep.snapshots = std::move(o.trace.snapshots);
  return rep;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config, const Strategy& strategy, Exec exec) {
  config.Validate();
  ExperimentResult result;
  result.strategy = strategy.name();
  result.replicas.resize(config.replicas);
  if (exec == Exec::kParallel) {
    std::vector<std::exception_ptr> errors(config.replicas);
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < config.replicas; ++r) {
      try {
        result.replicas[r] = RunReplica(config, strategy, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (int r = 0; r < config.replicas; ++r) result.replicas[r] = RunReplica(config, strategy, r);
  }
  return result;
}

namespace {

double ReplicaValue(const ReplicaResult& rep, const std::string& metric) {
  const double steps = static_cast<double>(rep.rows.size());
  if (steps == 0) return std::nan("");
  auto sum_rows = [&](auto field) {
    double acc = 0.0;
    for (const TraceRow& row : rep.rows) acc += field(row);
    return acc;
  };
  auto sum_details = [&](auto field) {
    double acc = 0.0;
    for (const DetailRow& row : rep.details) acc += field(row);
    return acc;
  };
  if (metric == "cumulative_reward") return sum_rows([](const TraceRow& r) { return r.reward; });
  if (metric == "liquidity") return sum_rows([](const TraceRow& r) { return r.liquidity; }) / steps;
  if (metric == "liquidity_cumulative") return sum_rows([](const TraceRow& r) { return r.liquidity; });
  if (metric == "channels") return sum_rows([](const TraceRow& r) { return double(r.channels); }) / steps;
  if (metric == "leverage") return sum_rows([](const TraceRow& r) { return r.leverage; }) / steps;
  if (metric == "rationing") return sum_rows([](const TraceRow& r) { return r.rationing; }) / steps;
  if (metric == "failures") return sum_rows([](const TraceRow& r) { return double(r.failures); }) / steps;
  if (metric == "failures_cumulative") return sum_rows([](const TraceRow& r) { return double(r.failures); });
  if (metric == "bad_debt") return sum_details([](const DetailRow& r) { return r.bad_debt; }) / steps;
  if (metric == "equity") return sum_details([](const DetailRow& r) { return r.equity; }) / steps;
  if (metric == "centrality") return sum_rows([](const TraceRow& r) { return r.centrality; }) / steps;
  if (metric == "density") return sum_rows([](const TraceRow& r) { return r.density; }) / steps;
  if (metric == "diameter") return sum_rows([](const TraceRow& r) { return r.diameter; }) / steps;
  if (metric == "eta_share") return sum_rows([](const TraceRow& r) { return double(r.eta); }) / steps;
  throw std::invalid_argument("unknown summary metric '" + metric + "'");
}

}  // namespace

std::vector<double> ReplicaMetric(const ExperimentResult& result, const std::string& metric) {
  std::vector<double> out;
  out.reserve(result.replicas.size());
  for (const ReplicaResult& rep : result.replicas) out.push_back(ReplicaValue(rep, metric));
  return out;
}

std::vector<MetricSummary> Summarize(const ExperimentResult& result) {
  std::vector<MetricSummary> out;
  for (const char* metric : kSummaryMetrics) {
    const std::vector<double> v = ReplicaMetric(result, metric);
    out.push_back({metric, Mean(v), SampleStd(v)});
  }
  return out;
}

void WriteStepAggregate(std::ostream& out, const ExperimentResult& result) {
  static const char* kColumns[] = {"eta",      "reward",   "liquidity",  "rationing",
                                   "failures", "leverage", "channels",   "centrality",
                                   "density",  "diameter", "components"};
  auto value = [](const TraceRow& r, int c) -> double {
    switch (c) {
      case 0: return r.eta;
      case 1: return r.reward;
      case 2: return r.liquidity;
      case 3: return r.rationing;
      case 4: return r.failures;
      case 5: return r.leverage;
      case 6: return r.channels;
      case 7: return r.centrality;
      case 8: return r.density;
      case 9: return r.diameter;
      default: return r.components;
    }
  };
  std::vector<std::string> header = {"step"};
  for (const char* c : kColumns) {
    header.push_back(std::string(c) + "_mean");
    header.push_back(std::string(c) + "_std");
  }
  WriteRow(out, header);
  if (result.replicas.empty()) return;
  const size_t steps = result.replicas.front().rows.size();
  for (size_t t = 0; t < steps; ++t) {
    std::vector<std::string> fields = {FormatNumber(result.replicas.front().rows[t].step)};
    for (int c = 0; c < 11; ++c) {
      std::vector<double> v;
      for (const ReplicaResult& rep : result.replicas) v.push_back(value(rep.rows.at(t), c));
      fields.push_back(FormatNumber(Mean(v)));
      fields.push_back(FormatNumber(SampleStd(v)));
    }
    WriteRow(out, fields);
  }
}

void WriteSummary(std::ostream& out, const std::string& strategy,
                  const std::vector<MetricSummary>& summary) {
  out << "strategy,metric,mean,std\n";
  for (const MetricSummary& m : summary) {
    WriteRow(out, {strategy, m.metric, FormatNumber(m.mean), FormatNumber(m.std)});
  }
}

std::string ReplicaFileName(int replica, const std::string& kind) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "replica_%03d_", replica);
  return std::string(buf) + kind + ".csv";
}

std::vector<std::string> WriteExperiment(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto path = [&](const std::string& name) { return (std::filesystem::path(dir) / name).string(); };
  for (const ReplicaResult& rep : result.replicas) {
    try {
      std::string p = path(ReplicaFileName(rep.replica, "trace"));
      WriteTextFile(p, [&](std::ostream& o) { WriteTraceCsv(o, rep.rows); });
      written.push_back(p);
      p = path(ReplicaFileName(rep.replica, "detail"));
      WriteTextFile(p, [&](std::ostream& o) { WriteDetailCsv(o, rep.details); });
      written.push_back(p);
      if (!rep.snapshots.empty()) {
        p = path(ReplicaFileName(rep.replica, "edges"));
        WriteTextFile(p, [&](std::ostream& o) { WriteEdgeCsv(o, rep.snapshots); });
        written.push_back(p);
      }
    } catch (const IoError& e) {
      throw IoError("replica " + std::to_string(rep.replica) + ": " + e.what());
    }
  }
  std::string p = path("aggregate.csv");
  WriteTextFile(p, [&](std::ostream& o) { WriteStepAggregate(o, result); });
  written.push_back(p);
  p = path("summary.csv");
  WriteTextFile(p, [&](std::ostream& o) { WriteSummary(o, result.strategy, Summarize(result)); });
  written.push_back(p);
  return written;
}

std::vector<double> SweepGrid(const std::string& parameter) {
  std::vector<double> grid;
  if (parameter == "beta") {
    for (int i = 0; i <= 20; ++i) grid.push_back(2.0 * i);
  } else if (parameter == "rho") {
    for (int i = 1; i <= 5; ++i) grid.push_back(i / 10.0);
  } else if (parameter == "omega") {
    for (int i = 0; i <= 4; ++i) grid.push_back((52 + 2 * i) / 100.0);
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + parameter + "'");
  }
  return grid;
}

MarketConfig WithParameter(const MarketConfig& base, const std::string& parameter, double value) {
  MarketConfig m = base;
  if (parameter == "beta") {
    m.beta = value;
  } else if (parameter == "rho") {
    m.shock.fire_sale_price = value;
  } else if (parameter == "omega") {
    m.shock.omega = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + parameter + "'");
  }
  m.Validate();
  return m;
}

namespace {

constexpr const char* kSweepMetrics[] = {"cumulative_reward", "liquidity", "channels",
                                         "leverage",          "rationing", "failures"};

}  // namespace

std::vector<SweepRow> Sweep(const ExperimentConfig& base, const std::string& parameter,
                            const std::vector<double>& grid,
                            const std::vector<const Strategy*>& strategies, Exec exec) {
  std::vector<SweepRow> rows;
  for (double value : grid) {
    ExperimentConfig cfg = base;
    cfg.market = WithParameter(base.market, parameter, value);
    cfg.market.snapshot_every = 0;
    for (const Strategy* s : strategies) {
      ExperimentResult res = RunExperiment(cfg, *s, exec);
      SweepRow row{parameter, value, s->name(), {}};
      for (const char* metric : kSweepMetrics) {
        const std::vector<double> v = ReplicaMetric(res, metric);
        row.summary.push_back({metric, Mean(v), SampleStd(v)});
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  std::vector<std::string> header = {"parameter", "value", "strategy"};
  for (const char* metric : kSweepMetrics) {
    header.push_back(std::string(metric) + "_mean");
    header.push_back(std::string(metric) + "_std");
  }
  WriteRow(out, header);
  for (const SweepRow& r : rows) {
    std::vector<std::string> f = {r.parameter, FormatNumber(r.value), r.strategy};
    for (const MetricSummary& m : r.summary) {
      f.push_back(FormatNumber(m.mean));
      f.push_back(FormatNumber(m.std));
    }
    WriteRow(out, f);
  }
}

}  // namespace ibrl
