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


#ifndef IBRL_APP_CONFIG_H_
#define IBRL_APP_CONFIG_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ibrl/env/environment.h"
#include "ibrl/ppo/trainer.h"

namespace ibrl {

struct ExperimentSettings {
  int replicas = 200;
  uint64_t seed = 1;
  int null_draws = 200;
  int test_episodes = 5;
};

struct ExplainSettings {
  int samples = 200;
  int background = 200;
  uint64_t seed = 11;
};

struct AppConfig {
  MarketConfig market;
  PpoConfig ppo;
  ExperimentSettings experiment;
  ExplainSettings explain;
};

// Environment variables consulted for overrides: IBRL_<SECTION>_<KEY>,
// upper case, e.g. IBRL_MARKET_BETA.
inline constexpr char kEnvPrefix[] = "IBRL_";

using EnvLookup = std::function<const char*(const std::string&)>;

// INI text with [market], [ppo], [experiment] and [explain] sections.
// Every key is optional; unknown sections or keys, malformed values and
// inconsistent parameters raise ConfigError naming the key.
AppConfig ParseConfig(std::istream& in, const EnvLookup& env);
// Reads the file and applies overrides from the process environment. An
// IBRL_ variable that names no known key is an error too.
AppConfig LoadConfig(const std::string& path);
AppConfig LoadConfigWithEnv(const std::string& path, const EnvLookup& env);

// section.key = value for every key, in a fixed order.
std::vector<std::pair<std::string, std::string>> ConfigEcho(const AppConfig& config);
// Same content as a loadable INI file.
void WriteConfigIni(std::ostream& out, const AppConfig& config);

std::string EnvVarName(const std::string& section, const std::string& key);

}  // namespace ibrl

#endif  // IBRL_APP_CONFIG_H_
