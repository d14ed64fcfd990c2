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


// Command-line entry point: simulate, train, evaluate, explain, sweep and
// report. Exit codes: 0 success, 2 configuration or usage error, 3 training
// divergence, 4 I/O failure.

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ibrl/analysis/experiment.h"
#include "ibrl/analysis/stats.h"
#include "ibrl/analysis/topology_null.h"
#include "ibrl/app/config.h"
#include "ibrl/app/manifest.h"
#include "ibrl/app/report.h"
#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"
#include "ibrl/env/trace_io.h"
#include "ibrl/explain/shapley.h"
#include "ibrl/ppo/checkpoint.h"
#include "ibrl/ppo/policy.h"
#include "ibrl/ppo/trainer.h"

namespace fs = std::filesystem;

namespace ibrl {
namespace {

struct Globals {
  int jobs = 0;  // 0: OpenMP default
  std::string command_line;
};

Exec ExecFor(const Globals& g) {
  if (g.jobs > 0) omp_set_num_threads(g.jobs);
  return g.jobs == 1 ? Exec::kSerial : Exec::kParallel;
}

std::unique_ptr<Strategy> MakeStrategy(const std::string& spec) {
  if (spec == "random") return std::make_unique<BernoulliStrategy>(0.5);
  if (spec == "fixed0") return std::make_unique<FixedStrategy>(0);
  if (spec == "fixed1") return std::make_unique<FixedStrategy>(1);
  const std::string prefix = "checkpoint:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string path = spec.substr(prefix.size());
    if (!fs::exists(path)) throw IoError("missing checkpoint " + path);
    return std::make_unique<ActorStrategy>(LoadActor(path), true);
  }
  throw ConfigError("unknown strategy '" + spec + "' (random, fixed0, fixed1, checkpoint:<path>)");
}

RunManifest StartManifest(const Globals& g, const AppConfig& config) {
  RunManifest m;
  m.command = g.command_line;
  m.started = UtcNow();
  m.config = ConfigEcho(config);
  return m;
}

void FinishManifest(RunManifest& m, const std::string& dir, std::vector<std::string> files) {
  const std::string echo = (fs::path(dir) / "config.ini").string();
  if (std::find(files.begin(), files.end(), echo) == files.end() && fs::exists(echo)) {
    files.push_back(echo);
  }
  m.AddFiles(dir, files);
  m.finished = UtcNow();
  WriteManifest((fs::path(dir) / "manifest.json").string(), m);
}

std::string WriteConfigEcho(const std::string& dir, const AppConfig& config) {
  const std::string p = (fs::path(dir) / "config.ini").string();
  WriteTextFile(p, [&](std::ostream& out) { WriteConfigIni(out, config); });
  return p;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::string strategy = "random";
  long long seed = -1;
  int replicas = 0;
  std::string out;
};

int Simulate(const Globals& g, const SimulateArgs& a) {
  AppConfig config = LoadConfig(a.config);
  if (a.seed >= 0) config.experiment.seed = static_cast<uint64_t>(a.seed);
  if (a.replicas > 0) config.experiment.replicas = a.replicas;
  auto strategy = MakeStrategy(a.strategy);
  const Exec exec = ExecFor(g);

  ExperimentConfig ec{config.market, config.experiment.replicas, config.experiment.seed};
  RunManifest manifest = StartManifest(g, config);
  const ExperimentResult result = RunExperiment(ec, *strategy, exec);
  const std::string dir = (fs::path(a.out) / strategy->name()).string();
  std::vector<std::string> files = WriteExperiment(result, dir);
  files.push_back(WriteConfigEcho(dir, config));

  if (config.market.snapshot_every > 0) {
    const std::string p = (fs::path(dir) / "topology_null.csv").string();
    WriteTextFile(p, [&](std::ostream& out) {
      out << "replica,observed_max_in_degree,null_q99,exceeds\n";
      for (const ReplicaResult& rep : result.replicas) {
        const HeavyTailTest t = TopologyNullTest(rep.snapshots, config.market.num_banks,
                                                 config.experiment.null_draws, DeriveSeed(rep.seed, 7));
        WriteRow(out, {FormatNumber(rep.replica), FormatNumber(t.observed), FormatNumber(t.null_q99),
                       t.exceeds ? "1" : "0"});
      }
    });
    files.push_back(p);
  }
  for (const ReplicaResult& rep : result.replicas) manifest.seeds.push_back(rep.seed);
  manifest.notes.emplace_back("strategy", strategy->name());
  FinishManifest(manifest, dir, files);
  std::cout << "simulated " << result.replicas.size() << " replicas of " << config.market.horizon
            << " steps under " << strategy->name() << " -> " << dir << '\n';
  for (const MetricSummary& m : Summarize(result)) {
    std::cout << "  " << m.metric << " " << m.mean << " (" << m.std << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string config;
  int instances = 0;
  int episodes = 0;
  std::string out;
  bool resume = false;
};

int Train(const Globals& g, const TrainArgs& a) {
  AppConfig config = LoadConfig(a.config);
  if (a.instances > 0) config.ppo.instances = a.instances;
  if (a.episodes > 0) config.ppo.episodes = a.episodes;
  config.ppo.Validate();
  const Exec exec = ExecFor(g);
  RunManifest manifest = StartManifest(g, config);
  fs::create_directories(a.out);

  const TrainResult result = TrainInstances(config.market, config.ppo, a.out, a.resume, exec);
  std::vector<std::string> files;
  const std::string curve = (fs::path(a.out) / "learning_curve.csv").string();
  WriteTextFile(curve, [&](std::ostream& out) {
    out << "episode,instance,eval_mean,eval_std\n";
    for (const InstanceResult& r : result.instances) {
      for (const CurvePoint& p : r.curve) {
        WriteRow(out, {FormatNumber(p.episode), FormatNumber(p.instance), FormatNumber(p.eval_mean),
                       FormatNumber(p.eval_std)});
      }
    }
  });
  files.push_back(curve);
  for (const InstanceResult& r : result.instances) {
    if (r.diverged) {
      std::cerr << "instance " << r.instance << " diverged: " << r.error << '\n';
      manifest.notes.emplace_back("diverged_" + std::to_string(r.instance), r.error);
    } else {
      files.push_back(r.checkpoint);
    }
  }
  const InstanceResult& best = result.instances[result.best_instance];
  const std::string marker = (fs::path(a.out) / "best.json").string();
  WriteTextFile(marker, [&](std::ostream& out) {
    out << "{\n \"best_instance\": " << best.instance << ",\n \"checkpoint\": \""
        << CheckpointName(best.instance) << "\",\n \"final_eval_mean\": "
        << FormatNumber(best.final_eval_mean) << "\n}\n";
  });
  files.push_back(marker);
  files.push_back(WriteConfigEcho(a.out, config));
  for (int k = 0; k < config.ppo.instances; ++k) {
    manifest.seeds.push_back(DeriveSeed(config.ppo.seed, 100 + static_cast<uint64_t>(k)));
  }
  manifest.notes.emplace_back("best_instance", std::to_string(best.instance));
  manifest.notes.emplace_back("best_checkpoint", CheckpointName(best.instance));
  FinishManifest(manifest, a.out, files);
  for (const InstanceResult& r : result.instances) {
    if (r.diverged) continue;
    std::cout << "instance " << r.instance << " final eval " << r.final_eval_mean
              << (r.instance == best.instance ? "  [best]" : "") << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string config;
  std::string checkpoint;
  int episodes = 0;
  long long seed = -1;
  std::string out;
};

int EvaluateCmd(const Globals& g, const EvaluateArgs& a) {
  AppConfig config = LoadConfig(a.config);
  if (!fs::exists(a.checkpoint)) throw IoError("missing checkpoint " + a.checkpoint);
  const int episodes = a.episodes > 0 ? a.episodes : config.experiment.test_episodes;
  const uint64_t base = a.seed >= 0 ? static_cast<uint64_t>(a.seed) : config.experiment.seed;
  ExecFor(g);
  ActorStrategy learned(LoadActor(a.checkpoint), true);
  BernoulliStrategy random(0.5);
  RunManifest manifest = StartManifest(g, config);
  fs::create_directories(a.out);
  std::vector<std::string> files;

  const std::vector<uint64_t> seeds = EvaluationSeeds(base, episodes);
  std::vector<EpisodeOutcome> ours(episodes), theirs(episodes);
#pragma omp parallel for schedule(dynamic, 1)
  for (int e = 0; e < episodes; ++e) {
    ours[e] = RunEpisode(config.market, learned, seeds[e], true);
    theirs[e] = RunEpisode(config.market, random, seeds[e], false);
  }
  std::vector<double> a_eta, b_eta, ours_ret, theirs_ret;
  const std::string eval = (fs::path(a.out) / "evaluation.csv").string();
  WriteTextFile(eval, [&](std::ostream& out) {
    out << "episode,seed,learned_return,random_return\n";
    for (int e = 0; e < episodes; ++e) {
      WriteRow(out, {FormatNumber(e), std::to_string(seeds[e]), FormatNumber(ours[e].cumulative_reward),
                     FormatNumber(theirs[e].cumulative_reward)});
      ours_ret.push_back(ours[e].cumulative_reward);
      theirs_ret.push_back(theirs[e].cumulative_reward);
      for (int x : ours[e].etas) a_eta.push_back(x);
      for (int x : theirs[e].etas) b_eta.push_back(x);
    }
  });
  files.push_back(eval);
  const std::string hist = (fs::path(a.out) / "eta_histogram.csv").string();
  WriteTextFile(hist, [&](std::ostream& out) {
    out << "strategy,eta,count,frequency\n";
    for (const auto& [name, etas] : {std::pair{std::string("learned"), &a_eta},
                                     std::pair{std::string("random"), &b_eta}}) {
      const double ones = static_cast<double>(std::count(etas->begin(), etas->end(), 1.0));
      const double n = static_cast<double>(etas->size());
      WriteRow(out, {name, "0", FormatNumber(n - ones), FormatNumber((n - ones) / n)});
      WriteRow(out, {name, "1", FormatNumber(ones), FormatNumber(ones / n)});
    }
  });
  files.push_back(hist);
  const KsResult ks = KsTwoSample(a_eta, b_eta);
  const std::string ksp = (fs::path(a.out) / "ks.csv").string();
  WriteTextFile(ksp, [&](std::ostream& out) {
    out << "sample_a,sample_b,d,p_value,reject_1pct\n";
    WriteRow(out, {"learned", "random", FormatNumber(ks.d), FormatNumber(ks.p_value),
                   ks.p_value < 0.01 ? "1" : "0"});
  });
  files.push_back(ksp);
  for (int e = 0; e < episodes; ++e) {
    const std::string t = (fs::path(a.out) / ReplicaFileName(e, "trace")).string();
    WriteTextFile(t, [&](std::ostream& out) { WriteTraceCsv(out, TraceRows(ours[e].trace)); });
    const std::string d = (fs::path(a.out) / ReplicaFileName(e, "detail")).string();
    WriteTextFile(d, [&](std::ostream& out) { WriteDetailCsv(out, DetailRows(ours[e].trace)); });
    files.push_back(t);
    files.push_back(d);
  }
  files.push_back(WriteConfigEcho(a.out, config));
  manifest.seeds = seeds;
  manifest.notes.emplace_back("checkpoint", fs::absolute(a.checkpoint).string());
  FinishManifest(manifest, a.out, files);
  std::cout << "learned " << Mean(ours_ret) << " (" << SampleStd(ours_ret) << ")  random "
            << Mean(theirs_ret) << " (" << SampleStd(theirs_ret) << ")\n"
            << "eta share learned " << Mean(a_eta) << "  random " << Mean(b_eta) << "  KS D=" << ks.d
            << " p=" << ks.p_value << '\n';
  return 0;
}

// ---------------------------------------------------------------- explain

struct ExplainArgs {
  std::string checkpoint;
  std::vector<std::string> traces;
  int samples = 200;
  int background = 200;
  std::string out;
};

std::vector<std::string> ExpandTraceInputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in)) {
        const std::string name = e.path().filename().string();
        if (name.size() > 11 && name.substr(name.size() - 11) == "_detail.csv") found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      if (!fs::exists(in)) throw IoError("missing trace " + in);
      files.push_back(in);
    }
  }
  return files;
}

// Evenly spaced picks so the selection needs no random stream.
std::vector<FeatureVector> Spread(const std::vector<FeatureVector>& rows, int count) {
  std::vector<FeatureVector> out;
  const size_t n = rows.size();
  const size_t k = std::min(n, static_cast<size_t>(count));
  for (size_t i = 0; i < k; ++i) out.push_back(rows[i * n / k]);
  return out;
}

int Explain(const Globals& g, const ExplainArgs& a) {
  if (!fs::exists(a.checkpoint)) throw IoError("missing checkpoint " + a.checkpoint);
  const Exec exec = ExecFor(g);
  const Mlp actor = LoadActor(a.checkpoint);
  std::vector<FeatureVector> observations;
  for (const std::string& f : ExpandTraceInputs(a.traces)) {
    for (const DetailRow& r : ReadDetailCsv(f)) {
      observations.emplace_back(r.observation.begin(), r.observation.end());
    }
  }
  if (observations.empty()) throw IoError("empty trace: no observations to explain");
  const std::vector<FeatureVector> samples = Spread(observations, a.samples);
  const std::vector<FeatureVector> background = Spread(observations, a.background);
  const std::vector<ShapRow> rows = ExplainActor(actor, samples, background, exec);
  const std::vector<std::string> names = ObservationFeatureNames();

  RunManifest manifest;
  manifest.command = g.command_line;
  manifest.started = UtcNow();
  fs::create_directories(a.out);
  std::vector<std::string> files;
  const std::string shap = (fs::path(a.out) / "shap_values.csv").string();
  WriteTextFile(shap, [&](std::ostream& out) { WriteShapCsv(out, rows, names); });
  files.push_back(shap);
  const auto ranking = RankFeatures(rows, names);
  const std::string rank = (fs::path(a.out) / "shap_ranking.csv").string();
  WriteTextFile(rank, [&](std::ostream& out) { WriteRankingCsv(out, ranking); });
  files.push_back(rank);
  double worst = 0.0;
  for (const ShapRow& r : rows) {
    double s = r.base_value;
    for (double p : r.phi) s += p;
    worst = std::max(worst, std::abs(s - r.prediction));
  }
  manifest.notes.emplace_back("samples", std::to_string(samples.size()));
  manifest.notes.emplace_back("max_efficiency_gap", FormatNumber(worst));
  FinishManifest(manifest, a.out, files);
  for (const FeatureImportance& f : ranking) {
    std::cout << "class " << f.output_class << " #" << f.rank << " " << f.feature << " "
              << f.mean_abs_phi << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config;
  std::string parameter = "beta";
  std::string strategies = "random,fixed0,fixed1";
  int replicas = 0;
  std::string out;
};

int SweepCmd(const Globals& g, const SweepArgs& a) {
  AppConfig config = LoadConfig(a.config);
  if (a.replicas > 0) config.experiment.replicas = a.replicas;
  const Exec exec = ExecFor(g);
  std::vector<std::unique_ptr<Strategy>> owned;
  std::vector<const Strategy*> strategies;
  std::stringstream ss(a.strategies);
  std::string item;
  while (std::getline(ss, item, ',')) {
    owned.push_back(MakeStrategy(item));
    strategies.push_back(owned.back().get());
  }
  if (strategies.empty()) throw ConfigError("no strategies given");
  std::vector<double> grid;
  try {
    grid = SweepGrid(a.parameter);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  RunManifest manifest = StartManifest(g, config);
  ExperimentConfig ec{config.market, config.experiment.replicas, config.experiment.seed};
  const auto rows = Sweep(ec, a.parameter, grid, strategies, exec);
  fs::create_directories(a.out);
  const std::string p = (fs::path(a.out) / ("sweep_" + a.parameter + ".csv")).string();
  WriteTextFile(p, [&](std::ostream& out) { WriteSweepCsv(out, rows); });
  std::vector<std::string> files = {p, WriteConfigEcho(a.out, config)};
  for (int r = 0; r < config.experiment.replicas; ++r) {
    manifest.seeds.push_back(ReplicaSeed(config.experiment.seed, r));
  }
  FinishManifest(manifest, a.out, files);
  std::cout << rows.size() << " sweep rows -> " << p << '\n';
  return 0;
}

// ---------------------------------------------------------------- report

int ReportCmd(const Globals&, const std::string& run_dir, const std::string& out) {
  const std::string dir = out.empty() ? (fs::path(run_dir) / "report").string() : out;
  const ReportOutput r = BuildReport(run_dir, dir);
  std::cout << r.text;
  for (const std::string& w : r.warnings) std::cerr << w << '\n';
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Interbank market simulation with a learned policy recommendation"};
  app.require_subcommand(1);
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);
  app.add_option("--jobs", g.jobs, "Worker threads (1 = serial reference path, 0 = all)")
      ->check(CLI::NonNegativeNumber);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo replicas under one strategy");
  simulate->add_option("config", sim.config, "Config file")->required();
  simulate->add_option("--strategy", sim.strategy, "random | fixed0 | fixed1 | checkpoint:<path>");
  simulate->add_option("--seed", sim.seed, "Base seed (overrides experiment.seed)");
  simulate->add_option("--replicas", sim.replicas, "Replica count (overrides experiment.replicas)");
  simulate->add_option("--out", sim.out, "Output directory")->required();

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train PPO instances");
  train->add_option("config", tr.config, "Config file")->required();
  train->add_option("--instances", tr.instances, "Instances (overrides ppo.instances)");
  train->add_option("--episodes", tr.episodes, "Training episodes (overrides ppo.episodes)");
  train->add_option("--out", tr.out, "Output directory")->required();
  train->add_flag("--resume", tr.resume, "Continue from checkpoints in --out");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Greedy out-of-sample evaluation against random");
  evaluate->add_option("config", ev.config, "Config file")->required();
  evaluate->add_option("checkpoint", ev.checkpoint, "Checkpoint file")->required();
  evaluate->add_option("--episodes", ev.episodes, "Episodes (default experiment.test_episodes)");
  evaluate->add_option("--seed", ev.seed, "Base seed for evaluation episodes");
  evaluate->add_option("--out", ev.out, "Output directory")->required();

  ExplainArgs ex;
  auto* explain = app.add_subcommand("explain", "Exact Shapley attribution of the actor");
  explain->add_option("checkpoint", ex.checkpoint, "Checkpoint file")->required();
  explain->add_option("traces", ex.traces, "Detail CSV files or directories")->required();
  explain->add_option("--samples", ex.samples, "Observations to explain")->check(CLI::PositiveNumber);
  explain->add_option("--background", ex.background, "Background observations")->check(CLI::PositiveNumber);
  explain->add_option("--out", ex.out, "Output directory")->required();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over beta, rho or omega");
  sweep->add_option("config", sw.config, "Config file")->required();
  sweep->add_option("--parameter", sw.parameter, "beta | rho | omega");
  sweep->add_option("--strategies", sw.strategies, "Comma-separated strategies");
  sweep->add_option("--replicas", sw.replicas, "Replica count per grid point");
  sweep->add_option("--out", sw.out, "Output directory")->required();

  std::string report_dir, report_out;
  auto* report = app.add_subcommand("report", "Tables from a run directory");
  report->add_option("run_dir", report_dir, "Directory holding strategy subdirectories")->required();
  report->add_option("--out", report_out, "Output directory (default <run_dir>/report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return Simulate(g, sim);
    if (*train) return Train(g, tr);
    if (*evaluate) return EvaluateCmd(g, ev);
    if (*explain) return Explain(g, ex);
    if (*sweep) return SweepCmd(g, sw);
    if (*report) return ReportCmd(g, report_dir, report_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace ibrl

int main(int argc, char** argv) { return ibrl::Main(argc, argv); }
