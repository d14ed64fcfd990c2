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


#include "ibrl/app/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"

extern char** environ;

namespace ibrl {

namespace {

struct Key {
  const char* section;
  const char* name;
  std::function<void(AppConfig&, const std::string&)> set;
  std::function<std::string(const AppConfig&)> get;
};

double ParseDouble(const std::string& key, const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

long long ParseInt(const std::string& key, const std::string& text) {
  const double v = ParseDouble(key, text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(v);
}

uint64_t ParseSeed(const std::string& key, const std::string& text) {
  const long long v = ParseInt(key, text);
  if (v < 0) throw ConfigError("config key '" + key + "': seeds must be non-negative");
  return static_cast<uint64_t>(v);
}

std::vector<int> ParseIntList(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(ParseInt(key, item)));
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::string JoinInts(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

#define IBRL_REAL(sec, name, field)                                                        \
  Key {                                                                                   \
    sec, name, [](AppConfig& c, const std::string& v) { c.field = ParseDouble(std::string(sec) + "." + name, v); }, \
        [](const AppConfig& c) { return FormatNumber(c.field); }                          \
  }
#define IBRL_INT(sec, name, field)                                                         \
  Key {                                                                                   \
    sec, name,                                                                            \
        [](AppConfig& c, const std::string& v) {                                          \
          c.field = static_cast<decltype(c.field)>(ParseInt(std::string(sec) + "." + name, v)); \
        },                                                                                \
        [](const AppConfig& c) { return std::to_string(c.field); }                        \
  }
#define IBRL_SEED(sec, name, field)                                                        \
  Key {                                                                                   \
    sec, name, [](AppConfig& c, const std::string& v) { c.field = ParseSeed(std::string(sec) + "." + name, v); }, \
        [](const AppConfig& c) { return std::to_string(c.field); }                        \
  }

// The initial sheet is surfaced as the gross cash C0 (liquidity plus
// reserves); the split follows the reserve ratio.
double InitialCash(const AppConfig& c) { return c.market.sheet.liquidity + c.market.sheet.reserves; }

const std::vector<Key>& Keys() {
  static const std::vector<Key> keys = {
      IBRL_INT("market", "num_banks", market.num_banks),
      IBRL_INT("market", "max_out_degree", market.max_out_degree),
      IBRL_INT("market", "horizon", market.horizon),
      IBRL_REAL("market", "deposit_mu", market.shock.mu),
      IBRL_REAL("market", "deposit_omega", market.shock.omega),
      IBRL_REAL("market", "fire_sale_price", market.shock.fire_sale_price),
      IBRL_REAL("market", "chi", market.costs.chi),
      IBRL_REAL("market", "phi", market.costs.phi),
      IBRL_REAL("market", "xi", market.costs.xi),
      IBRL_REAL("market", "beta", market.beta),
      IBRL_REAL("market", "isolation_prob", market.isolation_prob),
      IBRL_REAL("market", "initial_long_assets", market.sheet.long_assets),
      Key{"market", "initial_cash",
          [](AppConfig& c, const std::string& v) {
            const double cash = ParseDouble("market.initial_cash", v);
            c.market.sheet.liquidity = cash - c.market.sheet.reserves;
          },
          [](const AppConfig& c) { return FormatNumber(InitialCash(c)); }},
      Key{"market", "initial_deposits",
          [](AppConfig& c, const std::string& v) {
            const double cash = InitialCash(c);
            c.market.sheet.deposits = ParseDouble("market.initial_deposits", v);
            c.market.sheet.reserves = kReserveRatio * c.market.sheet.deposits;
            c.market.sheet.liquidity = cash - c.market.sheet.reserves;
          },
          [](const AppConfig& c) { return FormatNumber(c.market.sheet.deposits); }},
      IBRL_REAL("market", "initial_equity", market.sheet.equity),
      IBRL_REAL("market", "initial_rate", market.sheet.rate),
      IBRL_INT("market", "snapshot_every", market.snapshot_every),

      IBRL_REAL("ppo", "gamma", ppo.gamma),
      IBRL_REAL("ppo", "gae_tau", ppo.tau),
      IBRL_REAL("ppo", "clip", ppo.loss.clip),
      IBRL_REAL("ppo", "value_coef", ppo.loss.value_coef),
      IBRL_REAL("ppo", "entropy_coef", ppo.loss.entropy_coef),
      IBRL_INT("ppo", "epochs", ppo.epochs),
      IBRL_INT("ppo", "minibatch", ppo.minibatch),
      IBRL_REAL("ppo", "learning_rate", ppo.adam.learning_rate),
      IBRL_REAL("ppo", "adam_beta1", ppo.adam.beta1),
      IBRL_REAL("ppo", "adam_beta2", ppo.adam.beta2),
      IBRL_REAL("ppo", "adam_epsilon", ppo.adam.epsilon),
      Key{"ppo", "hidden",
          [](AppConfig& c, const std::string& v) { c.ppo.hidden = ParseIntList("ppo.hidden", v); },
          [](const AppConfig& c) { return JoinInts(c.ppo.hidden); }},
      IBRL_REAL("ppo", "bn_momentum", ppo.bn_momentum),
      IBRL_REAL("ppo", "bn_epsilon", ppo.bn_epsilon),
      IBRL_REAL("ppo", "actor_output_gain", ppo.actor_output_gain),
      IBRL_REAL("ppo", "return_momentum", ppo.return_momentum),
      IBRL_INT("ppo", "episodes", ppo.episodes),
      IBRL_INT("ppo", "eval_every", ppo.eval_every),
      IBRL_INT("ppo", "eval_episodes", ppo.eval_episodes),
      IBRL_INT("ppo", "instances", ppo.instances),
      IBRL_SEED("ppo", "seed", ppo.seed),
      IBRL_SEED("ppo", "eval_seed", ppo.eval_seed),

      IBRL_INT("experiment", "replicas", experiment.replicas),
      IBRL_SEED("experiment", "seed", experiment.seed),
      IBRL_INT("experiment", "null_draws", experiment.null_draws),
      IBRL_INT("experiment", "test_episodes", experiment.test_episodes),

      IBRL_INT("explain", "samples", explain.samples),
      IBRL_INT("explain", "background", explain.background),
      IBRL_SEED("explain", "seed", explain.seed),
  };
  return keys;
}

#undef IBRL_REAL
#undef IBRL_INT
#undef IBRL_SEED

const Key* FindKey(const std::string& section, const std::string& name) {
  for (const Key& k : Keys()) {
    if (section == k.section && name == k.name) return &k;
  }
  return nullptr;
}

void Validate(const AppConfig& c) {
  try {
    c.market.Validate();
    c.ppo.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  const auto& s = c.market.sheet;
  if (std::abs(s.long_assets + s.liquidity + s.reserves - s.deposits - s.equity) > 1e-9 * (s.deposits + 1.0)) {
    throw ConfigError("config keys 'market.initial_*' violate L + C = D + E");
  }
  if (s.liquidity < 0.0 || s.long_assets < 0.0 || s.equity <= 0.0) {
    throw ConfigError("config keys 'market.initial_*' must give a solvent, liquid bank");
  }
  if (c.ppo.minibatch > c.market.horizon) {
    throw ConfigError("config key 'ppo.minibatch' exceeds market.horizon");
  }
  if (c.experiment.replicas < 1) throw ConfigError("config key 'experiment.replicas' must be >= 1");
  if (c.experiment.null_draws < 1) throw ConfigError("config key 'experiment.null_draws' must be >= 1");
  if (c.experiment.test_episodes < 1) {
    throw ConfigError("config key 'experiment.test_episodes' must be >= 1");
  }
  if (c.explain.samples < 1 || c.explain.background < 1) {
    throw ConfigError("config keys 'explain.samples' and 'explain.background' must be >= 1");
  }
}

}  // namespace

std::string EnvVarName(const std::string& section, const std::string& key) {
  std::string s = std::string(kEnvPrefix) + section + "_" + key;
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

AppConfig ParseConfig(std::istream& in, const EnvLookup& env) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " at line " +
                      std::to_string(e.line()));
  }
  AppConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("config key '" + section + "' is outside any section");
    }
    for (const auto& [name, value] : body) {
      const Key* key = FindKey(section, name);
      if (!key) throw ConfigError("unknown config key '" + section + "." + name + "'");
      key->set(config, value.data());
    }
  }
  if (env) {
    for (const Key& k : Keys()) {
      if (const char* v = env(EnvVarName(k.section, k.name))) k.set(config, v);
    }
  }
  Validate(config);
  return config;
}

AppConfig LoadConfigWithEnv(const std::string& path, const EnvLookup& env) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  return ParseConfig(in, env);
}

AppConfig LoadConfig(const std::string& path) {
  std::set<std::string> known;
  for (const Key& k : Keys()) known.insert(EnvVarName(k.section, k.name));
  const std::string prefix = kEnvPrefix;
  for (char** e = environ; e && *e; ++e) {
    std::string entry(*e);
    if (entry.rfind(prefix, 0) != 0) continue;
    const std::string name = entry.substr(0, entry.find('='));
    if (!known.count(name)) throw ConfigError("unknown config override '" + name + "'");
  }
  return LoadConfigWithEnv(path, [](const std::string& name) { return std::getenv(name.c_str()); });
}

std::vector<std::pair<std::string, std::string>> ConfigEcho(const AppConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& k : Keys()) out.emplace_back(std::string(k.section) + "." + k.name, k.get(config));
  return out;
}

void WriteConfigIni(std::ostream& out, const AppConfig& config) {
  std::string current;
  for (const Key& k : Keys()) {
    if (current != k.section) {
      if (!current.empty()) out << '\n';
      current = k.section;
      out << '[' << current << "]\n";
    }
    out << k.name << " = " << k.get(config) << '\n';
  }
}

}  // namespace ibrl
