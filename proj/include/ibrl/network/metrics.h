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

#ifndef IBRL_NETWORK_METRICS_H_
#define IBRL_NETWORK_METRICS_H_

#include <span>
#include <vector>

#include "ibrl/network/credit_graph.h"

namespace ibrl {

struct NetworkMetrics {
  // sum_i (k_max - k_i) / (N (N - 1) - |V|), k = in-degree.
  double centrality = 0.0;
  // |V| / (N (N - 1)).
  double density = 0.0;
  // Longest shortest path in the undirected projection, over components
  // with at least two nodes.
  int diameter = 0;
  int components = 0;
  double avg_nodes_per_component = 0.0;
  int edges = 0;
  int max_in_degree = 0;
};

// Metrics over the alive banks (dead slots are ignored entirely).
NetworkMetrics ComputeNetworkMetrics(const CreditGraph& graph, const std::vector<bool>& alive);
NetworkMetrics ComputeNetworkMetrics(const CreditGraph& graph);

// P(k >= x) for x = 0..max in-degree.
std::vector<double> InDegreeDdf(std::span<const int> in_degrees);

struct HubPoint {
  int hub_id = -1;
  double hub_id_normalized = 0.0;  // id / N
  int hub_in_degree = 0;
  double hub_fitness = 0.0;
};

// Alive bank with the most incoming links, lowest id on ties.
HubPoint FindHub(std::span<const int> in_degrees, std::span<const double> fitness,
                 const std::vector<bool>& alive);

}  // namespace ibrl

#endif  // IBRL_NETWORK_METRICS_H_
