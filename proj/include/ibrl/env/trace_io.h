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


#ifndef IBRL_ENV_TRACE_IO_H_
#define IBRL_ENV_TRACE_IO_H_

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "ibrl/env/environment.h"

namespace ibrl {

// One row of the per-step trace file.
struct TraceRow {
  int step = 0;
  int eta = 0;
  double reward = 0.0;
  double liquidity = 0.0;
  double rationing = 0.0;
  int failures = 0;
  double leverage = 0.0;
  int channels = 0;
  double centrality = 0.0;
  double density = 0.0;
  double diameter = 0.0;
  int components = 0;
};

// Extra per-step columns: hub, losses and the observation the action was
// chosen on (in ToVector() order).
struct DetailRow {
  int step = 0;
  double bad_debt = 0.0;
  double equity = 0.0;
  int max_in_degree = 0;
  int hub_id = -1;
  int hub_in_degree = 0;
  double hub_fitness = 0.0;
  std::array<double, kObservationSize> observation{};
};

inline constexpr char kTraceHeader[] =
    "step,eta,reward,liquidity,rationing,failures,leverage,channels,centrality,density,"
    "diameter,components";

std::vector<TraceRow> TraceRows(const EpisodeTrace& trace);
std::vector<DetailRow> DetailRows(const EpisodeTrace& trace);

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows);
void WriteDetailCsv(std::ostream& out, const std::vector<DetailRow>& rows);
// `step,borrower,lender`, one row per edge per snapshot.
void WriteEdgeCsv(std::ostream& out, const std::vector<EdgeSnapshot>& snapshots);

std::vector<TraceRow> ReadTraceCsv(const std::string& path);
std::vector<DetailRow> ReadDetailCsv(const std::string& path);

}  // namespace ibrl

#endif  // IBRL_ENV_TRACE_IO_H_
