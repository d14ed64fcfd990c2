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


// Acceptance driver: one PASS/FAIL line per criterion, details indented
// below it. Usage: ibrl_acceptance <desk config> <work dir>. Exits non-zero
// when a gated criterion fails.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ibrl/analysis/experiment.h"
#include "ibrl/analysis/stats.h"
#include "ibrl/analysis/topology_null.h"
#include "ibrl/app/config.h"
#include "ibrl/app/manifest.h"
#include "ibrl/app/report.h"
#include "ibrl/common/rng.h"
#include "ibrl/explain/shapley.h"
#include "ibrl/network/credit_network.h"
#include "ibrl/ppo/checkpoint.h"
#include "ibrl/ppo/gae.h"
#include "ibrl/ppo/objective.h"
#include "ibrl/ppo/policy.h"
#include "ibrl/ppo/trainer.h"
#include "invariants.h"

namespace fs = std::filesystem;

namespace ibrl {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  Outcome(int n, std::string t) : number(n), title(std::move(t)) {}
  int number = 0;
  std::string title;
  bool pass = false;
  bool gated = true;
  std::vector<std::string> details;
};

std::string Fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void Print(const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << o.number << ": " << o.title;
  if (!o.gated) std::cout << " [soft: reported, not gated]";
  std::cout << '\n';
  for (const auto& d : o.details) std::cout << "    " << d << '\n';
  std::cout.flush();
}

// ---------------------------------------------------------------- 1

Outcome Invariants(const MarketConfig& desk) {
  Outcome o{1, "model invariants over 50 seeded episodes (T=500, N=50)"};
  MarketConfig c = desk;
  c.num_banks = 50;
  c.horizon = 500;
  const auto start = Clock::now();
  const int episodes = 50;
  std::vector<testing::InvariantReport> reports(episodes);
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < episodes; ++k) {
    testing::CheckEpisode(c, DeriveSeed(20240, static_cast<uint64_t>(k)), reports[k]);
  }
  long checks = 0, violations = 0;
  for (const auto& r : reports) {
    checks += r.checks;
    violations += r.violations;
    for (const auto& m : r.first) {
      if (o.details.size() < 5) o.details.push_back("violation: " + m);
    }
  }
  const double secs = Seconds(start);
  o.pass = violations == 0 && secs <= 120.0;
  o.details.push_back(std::to_string(checks) + " checks, " + std::to_string(violations) +
                      " violations, " + Fmt(secs, 3) + " s (budget 120 s)");
  return o;
}

// ---------------------------------------------------------------- 2

double ProfitAt(double r, double ai, double aj, double p, double c, const LendingCosts& k) {
  return p * r * c + (1.0 - p) * (k.xi * aj - c) + k.phi * aj - k.chi * ai;
}

Outcome Oracles() {
  Outcome o{2, "closed-form and oracle equivalences"};
  Rng rng(2);
  bool ok = true;

  // Zero-profit rate against a bisection root of the expected profit.
  double rate_err = 0.0;
  const LendingCosts costs;
  for (int t = 0; t < 2000; ++t) {
    const double ai = 50 + 500 * rng.Uniform(), aj = 50 + 500 * rng.Uniform();
    const double p = 0.05 + 0.95 * rng.Uniform(), c = aj * (0.01 + 0.99 * rng.Uniform());
    double lo = -1e3, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ProfitAt(mid, ai, aj, p, c, costs) < 0.0 ? lo : hi) = mid;
    }
    rate_err = std::max(rate_err, std::abs(ZeroProfitRate(ai, aj, p, c, costs) - 0.5 * (lo + hi)));
  }
  ok &= rate_err <= 1e-10;
  o.details.push_back("rate vs bisection: max abs error " + Fmt(rate_err, 3) + " (tol 1e-10)");

  // GAE against the nested sum.
  double gae_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int T = 2 + trial % 40;
    std::vector<double> r(T), v(T + 1);
    for (auto& x : r) x = 3 * rng.Normal();
    for (auto& x : v) x = 3 * rng.Normal();
    const double g = 0.99, tau = 0.95;
    const auto a = Gae(r, v, g, tau);
    for (int t = 0; t < T; ++t) {
      double s = 0.0;
      for (int k = 0; t + k < T; ++k) s += std::pow(g * tau, k) * (r[t + k] + g * v[t + k + 1] - v[t + k]);
      gae_err = std::max(gae_err, std::abs(a[t] - s));
    }
  }
  ok &= gae_err <= 1e-12;
  o.details.push_back("GAE vs brute force: max abs error " + Fmt(gae_err, 3) + " (tol 1e-12)");

  // PPO objective gradient against central differences on toy networks.
  double grad_err = 0.0;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    Rng r2(seed);
    Mlp actor(MlpShape{6, {4}, 2}), critic(MlpShape{6, {4}, 1});
    actor.Initialize(r2, 1.0);
    critic.Initialize(r2, 1.0);
    PpoBatch batch;
    for (int i = 0; i < 20; ++i) {
      std::vector<double> x(6);
      for (auto& v : x) v = r2.Normal();
      batch.obs.push_back(x);
    }
    const NormStats as = actor.BatchStats(batch.obs), cs = critic.BatchStats(batch.obs);
    const double offsets[] = {-0.5, -0.05, 0.0, 0.05, 0.5};
    for (int i = 0; i < 20; ++i) {
      double z[2], p[2];
      actor.Forward(batch.obs[i].data(), as, z, nullptr);
      FlooredSoftmax(z, 2, p);
      const int a = r2.Bernoulli(0.5);
      batch.actions.push_back(a);
      batch.old_log_prob.push_back(std::log(p[a]) + offsets[i % 5]);
      batch.advantages.push_back(r2.Normal());
      batch.value_targets.push_back(r2.Normal());
    }
    const PpoLossConfig cfg;
    const auto res = PpoObjective(actor, critic, batch, cfg, as, cs);
    auto check = [&](Mlp& net, const std::vector<double>& analytic) {
      for (size_t i = 0; i < net.params().size(); ++i) {
        const double keep = net.params()[i], h = 1e-5;
        net.params()[i] = keep + h;
        const double up = PpoObjective(actor, critic, batch, cfg, as, cs).terms.objective;
        net.params()[i] = keep - h;
        const double down = PpoObjective(actor, critic, batch, cfg, as, cs).terms.objective;
        net.params()[i] = keep;
        const double num = (up - down) / (2 * h);
        const double scale = std::max({std::abs(num), std::abs(analytic[i]), 1e-3});
        grad_err = std::max(grad_err, std::abs(num - analytic[i]) / scale);
      }
    };
    check(actor, res.actor_grad);
    check(critic, res.critic_grad);
  }
  ok &= grad_err <= 1e-4;
  o.details.push_back("PPO gradient vs finite differences: max relative error " + Fmt(grad_err, 3) +
                      " (tol 1e-4)");

  // Shapley efficiency on an actor and exactness on a linear model.
  Mlp actor;
  actor.Initialize(rng, 1.0);
  std::vector<FeatureVector> samples, background;
  for (int i = 0; i < 100; ++i) {
    FeatureVector s(6);
    for (auto& v : s) v = rng.Normal();
    (i % 2 ? samples : background).push_back(s);
  }
  double eff = 0.0;
  for (const ShapRow& row : ExplainActor(actor, samples, background, Exec::kParallel)) {
    double s = row.base_value;
    for (double p : row.phi) s += p;
    eff = std::max(eff, std::abs(s - row.prediction));
  }
  const auto lin = ShapleyExact([](const FeatureVector& x) { return x[0] + 2 * x[1]; }, {1, 1}, {0, 0});
  const double lin_err = std::max(std::abs(lin[0] - 1), std::abs(lin[1] - 2));
  ok &= eff <= 1e-6 && lin_err <= 1e-12;
  o.details.push_back("SHAP efficiency gap " + Fmt(eff, 3) + " (tol 1e-6); linear model error " +
                      Fmt(lin_err, 3));
  o.pass = ok;
  return o;
}

// ---------------------------------------------------------------- 3, 4

struct LearningResult {
  Mlp actor;
  std::vector<uint64_t> test_seeds;
  EvalSummary learned, random;
};

Outcome Learning(const AppConfig& config, const fs::path& work, LearningResult& out) {
  Outcome o{3, "learned policy beats Bernoulli(0.5) on >= 4 of 5 paired test seeds"};
  PpoConfig ppo = config.ppo;
  ppo.instances = 4;
  ppo.episodes = 150;
  const auto start = Clock::now();
  const TrainResult trained =
      TrainInstances(config.market, ppo, (work / "train").string(), false, Exec::kParallel);
  const double secs = Seconds(start);
  for (const InstanceResult& r : trained.instances) {
    o.details.push_back("instance " + std::to_string(r.instance) +
                        (r.diverged ? " diverged: " + r.error
                                    : " final validation mean " + Fmt(r.final_eval_mean)));
  }
  out.actor = trained.actors[trained.best_instance];
  // Test seeds are disjoint from the validation seeds used to pick the best
  // instance.
  out.test_seeds = EvaluationSeeds(DeriveSeed(config.experiment.seed, 31), 5);
  ActorStrategy learned(out.actor, true);
  BernoulliStrategy random(0.5);
  out.learned = Evaluate(config.market, learned, out.test_seeds);
  out.random = Evaluate(config.market, random, out.test_seeds);
  int wins = 0;
  std::ostringstream pairs;
  for (size_t k = 0; k < out.test_seeds.size(); ++k) {
    wins += out.learned.returns[k] > out.random.returns[k];
    pairs << (k ? ", " : "") << Fmt(out.learned.returns[k]) << " vs " << Fmt(out.random.returns[k]);
  }
  o.pass = wins >= 4;
  o.details.push_back("best instance " + std::to_string(trained.best_instance) + ", training " +
                      Fmt(secs, 4) + " s (budget 4 h)");
  o.details.push_back("paired returns (learned vs random): " + pairs.str());
  o.details.push_back("wins " + std::to_string(wins) + "/5; means " + Fmt(out.learned.mean) + " vs " +
                      Fmt(out.random.mean));
  o.pass = o.pass && secs <= 4 * 3600.0;
  return o;
}

Outcome EtaSimilarity(const LearningResult& l) {
  Outcome o{4, "learned eta distribution not distinguishable from Bernoulli(0.5) by KS at 1%"};
  o.gated = false;
  std::vector<double> a(l.learned.etas.begin(), l.learned.etas.end());
  std::vector<double> b(l.random.etas.begin(), l.random.etas.end());
  const KsResult ks = KsTwoSample(a, b);
  o.pass = ks.p_value >= 0.01;
  o.details.push_back("eta share learned " + Fmt(Mean(a)) + ", random " + Fmt(Mean(b)) + "; D=" +
                      Fmt(ks.d) + " p=" + Fmt(ks.p_value, 3));
  return o;
}

// ---------------------------------------------------------------- 5, 6, 7

double MaxHubShare(const ReplicaResult& rep, int n) {
  int best = 0;
  for (const DetailRow& d : rep.details) best = std::max(best, d.hub_in_degree);
  return static_cast<double>(best) / n;
}

Outcome Topology(const ExperimentResult& random, const MarketConfig& market, int draws,
                 const std::vector<const ExperimentResult*>& others) {
  Outcome o{5, "heavy-tailed in-degree (>= 80% of replicas) and a >45% hub (>= half of replicas)"};
  int exceed = 0, hub = 0;
  const int m = static_cast<int>(random.replicas.size());
  std::vector<HeavyTailTest> tests(m);
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < m; ++r) {
    tests[r] = TopologyNullTest(random.replicas[r].snapshots, market.num_banks, draws,
                                DeriveSeed(random.replicas[r].seed, 7));
  }
  double obs = 0.0, q = 0.0;
  for (int r = 0; r < m; ++r) {
    exceed += tests[r].exceeds;
    obs += tests[r].observed / m;
    q += tests[r].null_q99 / m;
    hub += MaxHubShare(random.replicas[r], market.num_banks) > 0.45;
  }
  const bool a = exceed >= 0.8 * m;
  const bool b = hub >= 0.5 * m;
  o.pass = a && b;
  o.details.push_back("(a) " + std::string(a ? "pass" : "fail") + ": max in-degree above the null's 99th " +
                      "percentile in " + std::to_string(exceed) + "/" + std::to_string(m) +
                      " replicas (mean observed " + Fmt(obs, 4) + ", mean null q99 " + Fmt(q, 4) + ")");
  o.details.push_back("(b) " + std::string(b ? "pass" : "fail") + ": hub serving >45% of banks in " +
                      std::to_string(hub) + "/" + std::to_string(m) + " replicas");
  for (const ExperimentResult* e : others) {
    int h = 0;
    for (const auto& rep : e->replicas) h += MaxHubShare(rep, market.num_banks) > 0.45;
    o.details.push_back("info: " + e->strategy + " has a >45% hub in " + std::to_string(h) + "/" +
                        std::to_string(e->replicas.size()) + " replicas");
  }
  o.details.push_back("gated on Bernoulli(0.5) traces");
  return o;
}

Outcome RegressionSigns(const ExperimentResult& random) {
  Outcome o{6, "regression signs: categorical b1 (centrality -, density -, diameter +), "
               "failures on density -, failures on diameter +"};
  bool ok = true;
  auto check = [&](const std::string& label, double value, int sign, double t) {
    const bool good = sign < 0 ? value < 0.0 : value > 0.0;
    ok &= good;
    o.details.push_back(label + " = " + Fmt(value, 4) + " (t=" + Fmt(t, 3) + ", want " +
                        (sign < 0 ? "< 0" : "> 0") + ") " + (good ? "ok" : "WRONG SIGN"));
  };
  for (const NamedRegression& r : CategoricalTable(random)) {
    if (r.dependent == "centrality") check("categorical b1 centrality", r.fit.b1, -1, r.fit.t1);
    if (r.dependent == "density") check("categorical b1 density", r.fit.b1, -1, r.fit.t1);
    if (r.dependent == "diameter") check("categorical b1 diameter", r.fit.b1, +1, r.fit.t1);
  }
  for (const NamedRegression& r : TopologyRegressions(random)) {
    if (r.dependent != "failures") continue;
    if (r.regressor == "density") check("failures ~ density slope", r.fit.b1, -1, r.fit.t1);
    if (r.regressor == "diameter") check("failures ~ diameter slope", r.fit.b1, +1, r.fit.t1);
  }
  o.pass = ok && o.details.size() == 5;
  o.details.push_back("pooled per-step data of the Bernoulli(0.5) replicas");
  return o;
}

struct Moments {
  double mean = 0.0, sd = 0.0;
  int n = 0;
};

Moments MetricMoments(const ExperimentResult& r, const std::string& metric) {
  const auto v = ReplicaMetric(r, metric);
  return {Mean(v), SampleStd(v), static_cast<int>(v.size())};
}

// Claim "lower < upper" holds within a one-sided two-standard-error band.
bool LowerWithin(const Moments& lower, const Moments& upper, double* margin) {
  const double se = std::sqrt(lower.sd * lower.sd / lower.n + upper.sd * upper.sd / upper.n);
  *margin = 2.0 * se;
  return lower.mean <= upper.mean + *margin;
}

Outcome Directionality(const ExperimentResult& learned, const ExperimentResult& random,
                       const ExperimentResult& fixed0, const ExperimentResult& fixed1) {
  Outcome o{7, "liquidity fixed0 > fixed1; learned leverage and rationing below random"};
  bool ok = true;
  auto line = [&](const std::string& label, const Moments& lo, const Moments& hi, const std::string& lo_name,
                  const std::string& hi_name) {
    double margin = 0.0;
    const bool good = LowerWithin(lo, hi, &margin);
    ok &= good;
    o.details.push_back(label + ": " + lo_name + " " + Fmt(lo.mean) + " (" + Fmt(lo.sd, 3) + ") vs " +
                        hi_name + " " + Fmt(hi.mean) + " (" + Fmt(hi.sd, 3) + "), tolerance " +
                        Fmt(margin, 3) + " -> " + (good ? "ok" : "violated"));
  };
  line("liquidity", MetricMoments(fixed1, "liquidity"), MetricMoments(fixed0, "liquidity"), "fixed1",
       "fixed0");
  line("leverage", MetricMoments(learned, "leverage"), MetricMoments(random, "leverage"), "learned",
       "random");
  line("rationing", MetricMoments(learned, "rationing"), MetricMoments(random, "rationing"), "learned",
       "random");
  o.pass = ok;
  return o;
}

// ---------------------------------------------------------------- 8

std::vector<std::pair<std::string, std::string>> HashDir(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) out.emplace_back(e.path().filename().string(), Sha256File(e.path().string()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome Determinism(const AppConfig& config, const Mlp& actor, const fs::path& work) {
  Outcome o{8, "identical seeds give byte-identical trace and aggregate files"};
  bool ok = true;
  ExperimentConfig ec{config.market, 4, config.experiment.seed};
  ActorStrategy learned(actor, true);
  BernoulliStrategy random(0.5);
  for (const Strategy* s : std::vector<const Strategy*>{&random, &learned}) {
    const fs::path a = work / "det" / (s->name() + "_a");
    const fs::path b = work / "det" / (s->name() + "_b");
    WriteExperiment(RunExperiment(ec, *s, Exec::kParallel), a.string());
    WriteExperiment(RunExperiment(ec, *s, Exec::kSerial), b.string());
    const auto ha = HashDir(a), hb = HashDir(b);
    const bool same = ha == hb && !ha.empty();
    ok &= same;
    o.details.push_back(s->name() + ": " + std::to_string(ha.size()) + " files " +
                        (same ? "identical" : "DIFFER") + " across a parallel and a serial rerun");
  }
  // Training pipeline: two short runs from scratch.
  PpoConfig ppo = config.ppo;
  ppo.instances = 2;
  ppo.episodes = 4;
  ppo.eval_every = 2;
  ppo.eval_episodes = 2;
  MarketConfig m = config.market;
  m.horizon = 100;
  TrainInstances(m, ppo, (work / "det" / "train_a").string(), false, Exec::kParallel);
  TrainInstances(m, ppo, (work / "det" / "train_b").string(), false, Exec::kSerial);
  const bool same = HashDir(work / "det" / "train_a") == HashDir(work / "det" / "train_b");
  ok &= same;
  o.details.push_back(std::string("training checkpoints ") + (same ? "identical" : "DIFFER") +
                      " across reruns");
  o.pass = ok;
  return o;
}

int Run(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: ibrl_acceptance <desk config> <work dir>\n";
    return 2;
  }
  const AppConfig config = LoadConfig(argv[1]);
  const fs::path work = argv[2];
  fs::remove_all(work);
  fs::create_directories(work);
  const auto start = Clock::now();
  std::cout << "acceptance run: N=" << config.market.num_banks << " T=" << config.market.horizon
            << " replicas=" << config.experiment.replicas << " threads=" << omp_get_max_threads() << '\n';

  std::vector<Outcome> outcomes;
  auto record = [&](Outcome o) {
    Print(o);
    outcomes.push_back(std::move(o));
  };
  record(Invariants(config.market));
  record(Oracles());
  LearningResult learning;
  record(Learning(config, work, learning));
  record(EtaSimilarity(learning));

  MarketConfig market = config.market;
  if (market.snapshot_every <= 0) market.snapshot_every = 10;
  ExperimentConfig ec{market, config.experiment.replicas, config.experiment.seed};
  ActorStrategy learned(learning.actor, true);
  BernoulliStrategy random(0.5);
  FixedStrategy fixed0(0), fixed1(1);
  const ExperimentResult r_learned = RunExperiment(ec, learned, Exec::kParallel);
  const ExperimentResult r_random = RunExperiment(ec, random, Exec::kParallel);
  const ExperimentResult r_fixed0 = RunExperiment(ec, fixed0, Exec::kParallel);
  const ExperimentResult r_fixed1 = RunExperiment(ec, fixed1, Exec::kParallel);
  record(Topology(r_random, market, config.experiment.null_draws, {&r_learned, &r_fixed0, &r_fixed1}));
  record(RegressionSigns(r_random));
  record(Directionality(r_learned, r_random, r_fixed0, r_fixed1));
  record(Determinism(config, learning.actor, work));

  int gated_failures = 0;
  for (const Outcome& o : outcomes) gated_failures += o.gated && !o.pass;
  std::cout << "summary: " << outcomes.size() - static_cast<size_t>(gated_failures) << "/" << outcomes.size()
            << " criteria without a gated failure, " << Fmt(Seconds(start), 4) << " s\n";
  return gated_failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ibrl

int main(int argc, char** argv) {
  try {
    return ibrl::Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << '\n';
    return 2;
  }
}
