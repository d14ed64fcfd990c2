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


#include "ibrl/app/report.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "ibrl/app/manifest.h"
#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"

namespace ibrl {

namespace fs = std::filesystem;

namespace {

double Column(const TraceRow& r, const std::string& c) {
  if (c == "reward") return r.reward;
  if (c == "liquidity") return r.liquidity;
  if (c == "rationing") return r.rationing;
  if (c == "failures") return r.failures;
  if (c == "leverage") return r.leverage;
  if (c == "channels") return r.channels;
  if (c == "centrality") return r.centrality;
  if (c == "density") return r.density;
  if (c == "diameter") return r.diameter;
  if (c == "components") return r.components;
  if (c == "eta") return r.eta;
  throw std::invalid_argument("unknown trace column '" + c + "'");
}

}  // namespace

std::vector<double> PooledSeries(const ExperimentResult& result, const std::string& column) {
  std::vector<double> out;
  for (const ReplicaResult& rep : result.replicas) {
    if (column == "bad_debt" || column == "equity") {
      for (const DetailRow& d : rep.details) out.push_back(column == "bad_debt" ? d.bad_debt : d.equity);
    } else {
      for (const TraceRow& r : rep.rows) out.push_back(Column(r, column));
    }
  }
  return out;
}

std::vector<int> PooledEta(const ExperimentResult& result) {
  std::vector<int> out;
  for (const ReplicaResult& rep : result.replicas) {
    for (const TraceRow& r : rep.rows) out.push_back(r.eta);
  }
  return out;
}

std::vector<NamedRegression> CategoricalTable(const ExperimentResult& result) {
  static const char* kVars[] = {"liquidity", "channels", "leverage",   "rationing",
                                "failures",  "bad_debt", "equity",     "centrality",
                                "density",   "diameter"};
  const std::vector<int> eta = PooledEta(result);
  const bool varies = std::find(eta.begin(), eta.end(), 0) != eta.end() &&
                      std::find(eta.begin(), eta.end(), 1) != eta.end();
  std::vector<NamedRegression> out;
  if (!varies) return out;
  for (const char* v : kVars) {
    const std::vector<double> y = PooledSeries(result, v);
    if (y.size() != eta.size()) continue;  // detail files absent
    out.push_back({v, "1-eta", CategoricalRegression(y, eta)});
  }
  return out;
}

std::vector<NamedRegression> TopologyRegressions(const ExperimentResult& result) {
  static const char* kDeps[] = {"failures", "rationing", "leverage"};
  static const char* kRegs[] = {"centrality", "density", "diameter"};
  std::vector<NamedRegression> out;
  for (const char* y : kDeps) {
    const std::vector<double> ys = PooledSeries(result, y);
    for (const char* x : kRegs) {
      const std::vector<double> xs = PooledSeries(result, x);
      try {
        out.push_back({y, x, SimpleOls(ys, xs)});
      } catch (const std::invalid_argument&) {
        // constant regressor, e.g. a run without links; skip the row
      }
    }
  }
  return out;
}

std::vector<LagSummary> LeverageFailureLags(const ExperimentResult& result, int max_lag) {
  std::vector<LagSummary> out(2 * max_lag + 1);
  for (int i = 0; i <= 2 * max_lag; ++i) out[i].lag = i - max_lag;
  int replicas = 0;
  for (const ReplicaResult& rep : result.replicas) {
    if (static_cast<int>(rep.rows.size()) < 2 * max_lag + 3) continue;
    std::vector<double> lev, fail;
    for (const TraceRow& r : rep.rows) {
      lev.push_back(r.leverage);
      fail.push_back(r.failures);
    }
    ++replicas;
    const auto lags = LaggedCorrelation(lev, fail, max_lag, 0.01);
    for (size_t i = 0; i < lags.size(); ++i) {
      if (!lags[i].defined) continue;
      out[i].mean_corr += lags[i].corr;
      out[i].significant_share += lags[i].significant ? 1.0 : 0.0;
      ++out[i].defined;
    }
  }
  for (LagSummary& s : out) {
    if (s.defined) s.mean_corr /= s.defined;
    s.mean_corr = s.defined ? s.mean_corr : std::nan("");
    if (replicas) s.significant_share /= replicas;
  }
  return out;
}

std::vector<TenureRow> HubTenures(const ExperimentResult& result) {
  std::vector<TenureRow> out;
  for (const ReplicaResult& rep : result.replicas) {
    if (rep.details.size() != rep.rows.size()) continue;
    std::vector<int> hubs, etas;
    for (size_t t = 0; t < rep.rows.size(); ++t) {
      hubs.push_back(rep.details[t].hub_id);
      etas.push_back(rep.rows[t].eta);
    }
    for (const auto& [eta, tenure] : MaxHubTenure(hubs, etas)) out.push_back({rep.replica, eta, tenure});
  }
  return out;
}

ExperimentResult LoadExperiment(const std::string& dir, const std::string& strategy) {
  ExperimentResult result;
  result.strategy = strategy;
  for (int r = 0;; ++r) {
    const fs::path trace = fs::path(dir) / ReplicaFileName(r, "trace");
    if (!fs::exists(trace)) break;
    ReplicaResult rep;
    rep.replica = r;
    rep.rows = ReadTraceCsv(trace.string());
    const fs::path detail = fs::path(dir) / ReplicaFileName(r, "detail");
    if (fs::exists(detail)) rep.details = ReadDetailCsv(detail.string());
    for (const TraceRow& row : rep.rows) rep.cumulative_reward += row.reward;
    result.replicas.push_back(std::move(rep));
  }
  return result;
}

namespace {

std::string Cell(double mean, double sd) {
  std::ostringstream s;
  s.precision(6);
  s << mean << " (" << sd << ")";
  return s.str();
}

void WriteRegressions(std::ostream& out, const std::string& strategy,
                      const std::vector<NamedRegression>& rows, bool header) {
  if (header) out << "strategy,dependent,regressor,b0,t0,b1,t1,p1,stars,r2,n\n";
  for (const NamedRegression& r : rows) {
    WriteRow(out, {strategy, r.dependent, r.regressor, FormatNumber(r.fit.b0), FormatNumber(r.fit.t0),
                   FormatNumber(r.fit.b1), FormatNumber(r.fit.t1), FormatNumber(r.fit.p1),
                   SignificanceStars(r.fit.p1), FormatNumber(r.fit.r2),
                   FormatNumber(static_cast<long long>(r.fit.n))});
  }
}

}  // namespace

ReportOutput BuildReport(const std::string& run_dir, const std::string& out_dir) {
  ReportOutput report;
  std::vector<std::string> missing;
  std::vector<std::pair<std::string, std::string>> present;  // strategy, dir
  for (const char* s : kStrategyOrder) {
    const fs::path dir = fs::path(run_dir) / s;
    if (!fs::is_directory(dir)) continue;
    if (!fs::exists(dir / "manifest.json")) missing.push_back((dir / "manifest.json").string());
    if (!fs::exists(dir / "summary.csv")) missing.push_back((dir / "summary.csv").string());
    if (!fs::exists(dir / ReplicaFileName(0, "trace"))) {
      missing.push_back((dir / ReplicaFileName(0, "trace")).string());
    }
    present.emplace_back(s, dir.string());
  }
  if (present.empty()) {
    missing.push_back(run_dir + "/{learned,random,fixed0,fixed1}/");
  }
  if (!missing.empty()) {
    std::string msg = "missing report inputs:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw IoError(msg);
  }

  std::map<std::string, ExperimentResult> runs;
  std::map<std::string, std::map<std::string, std::pair<double, double>>> summaries;
  for (const auto& [strategy, dir] : present) {
    const RunManifest manifest = ReadManifest((fs::path(dir) / "manifest.json").string());
    for (const std::string& p : VerifyManifest(manifest, dir)) {
      report.warnings.push_back("integrity warning (" + strategy + "): " + p);
    }
    CsvTable t = CsvTable::ReadFile((fs::path(dir) / "summary.csv").string());
    const size_t cm = t.Column("metric"), cmean = t.Column("mean"), csd = t.Column("std");
    for (size_t i = 0; i < t.rows(); ++i) {
      summaries[strategy][t.Cell(i, cm)] = {t.Number(i, cmean), t.Number(i, csd)};
    }
    runs[strategy] = LoadExperiment(dir, strategy);
  }

  fs::create_directories(out_dir);
  auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };
  std::ostringstream text;
  text << "Strategy comparison: mean over replicas (std in parentheses)\n";

  // Table-2 style comparison.
  {
    const std::string p = path("comparison.csv");
    WriteTextFile(p, [&](std::ostream& out) {
      std::vector<std::string> header = {"metric"};
      for (const auto& [s, dir] : present) {
        header.push_back(s + "_mean");
        header.push_back(s + "_std");
      }
      WriteRow(out, header);
      for (const char* metric : kSummaryMetrics) {
        std::vector<std::string> f = {metric};
        text << "  " << metric;
        for (const auto& [s, dir] : present) {
          const auto it = summaries[s].find(metric);
          const double m = it == summaries[s].end() ? std::nan("") : it->second.first;
          const double sd = it == summaries[s].end() ? std::nan("") : it->second.second;
          f.push_back(FormatNumber(m));
          f.push_back(FormatNumber(sd));
          text << "  " << s << "=" << Cell(m, sd);
        }
        text << '\n';
        WriteRow(out, f);
      }
    });
    report.files.push_back(p);
  }

  {
    const std::string p = path("categorical_regression.csv");
    WriteTextFile(p, [&](std::ostream& out) {
      bool header = true;
      for (const auto& [s, dir] : present) {
        const auto rows = CategoricalTable(runs[s]);
        WriteRegressions(out, s, rows, header);
        header = false;
        if (rows.empty()) {
          text << "Categorical regression skipped for " << s << ": eta is constant\n";
          continue;
        }
        text << "Categorical regression y = b0 + b1 (1 - eta), " << s << ":\n";
        for (const auto& r : rows) {
          text << "  " << r.dependent << " b0=" << r.fit.b0 << " b1=" << r.fit.b1 << " (t=" << r.fit.t1
               << ")" << SignificanceStars(r.fit.p1) << '\n';
        }
      }
      if (header) WriteRegressions(out, "", {}, true);
    });
    report.files.push_back(p);
  }

  {
    const std::string p = path("topology_regression.csv");
    WriteTextFile(p, [&](std::ostream& out) {
      bool header = true;
      for (const auto& [s, dir] : present) {
        const auto rows = TopologyRegressions(runs[s]);
        WriteRegressions(out, s, rows, header);
        header = false;
        text << "Stability on topology (univariate OLS), " << s << ":\n";
        for (const auto& r : rows) {
          text << "  " << r.dependent << " ~ " << r.regressor << " slope=" << r.fit.b1
               << " (t=" << r.fit.t1 << ")" << SignificanceStars(r.fit.p1) << '\n';
        }
      }
    });
    report.files.push_back(p);
  }

  {
    const std::string p = path("ks.csv");
    WriteTextFile(p, [&](std::ostream& out) {
      out << "sample_a,sample_b,d,p_value,reject_1pct\n";
      if (runs.count("learned") && runs.count("random")) {
        std::vector<double> a, b;
        for (int e : PooledEta(runs["learned"])) a.push_back(e);
        for (int e : PooledEta(runs["random"])) b.push_back(e);
        const KsResult ks = KsTwoSample(a, b);
        WriteRow(out, {"learned", "random", FormatNumber(ks.d), FormatNumber(ks.p_value),
                       ks.p_value < 0.01 ? "1" : "0"});
        text << "KS learned vs random eta: D=" << ks.d << " p=" << ks.p_value << '\n';
      }
    });
    report.files.push_back(p);
  }

  {
    const std::string p = path("hub_tenure.csv");
    WriteTextFile(p, [&](std::ostream& out) {
      out << "strategy,replica,eta,max_tenure\n";
      for (const auto& [s, dir] : present) {
        for (const TenureRow& r : HubTenures(runs[s])) {
          WriteRow(out, {s, FormatNumber(r.replica), FormatNumber(r.eta), FormatNumber(r.max_tenure)});
        }
      }
    });
    report.files.push_back(p);
  }

  {
    const std::string p = path("lagged_correlation.csv");
    WriteTextFile(p, [&](std::ostream& out) {
      out << "strategy,lag,mean_corr,significant_share\n";
      for (const auto& [s, dir] : present) {
        const ExperimentResult& run = runs[s];
        if (run.replicas.empty() || run.replicas.front().rows.size() < 45) continue;
        for (const LagSummary& l : LeverageFailureLags(run, 21)) {
          WriteRow(out, {s, FormatNumber(l.lag), FormatNumber(l.mean_corr),
                         FormatNumber(l.significant_share)});
        }
      }
    });
    report.files.push_back(p);
  }

  for (const std::string& w : report.warnings) text << w << '\n';
  report.text = text.str();
  const std::string p = path("report.txt");
  WriteTextFile(p, [&](std::ostream& out) { out << report.text; });
  report.files.push_back(p);
  return report;
}

}  // namespace ibrl
