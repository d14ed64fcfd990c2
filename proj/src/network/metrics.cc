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

#include "ibrl/network/metrics.h"

#include <algorithm>
#include <queue>

namespace ibrl {

NetworkMetrics ComputeNetworkMetrics(const CreditGraph& graph, const std::vector<bool>& alive) {
  NetworkMetrics m;
  const int n_slots = graph.size();
  std::vector<std::vector<int>> undirected(static_cast<size_t>(n_slots));
  std::vector<int> in_degree(static_cast<size_t>(n_slots), 0);
  int n = 0;
  for (int b = 0; b < n_slots; ++b) {
    if (!alive[static_cast<size_t>(b)]) continue;
    ++n;
    for (int l : graph.Lenders(b)) {
      if (!alive[static_cast<size_t>(l)]) continue;
      ++m.edges;
      ++in_degree[static_cast<size_t>(l)];
      undirected[static_cast<size_t>(b)].push_back(l);
      undirected[static_cast<size_t>(l)].push_back(b);
    }
  }
  if (n == 0) return m;

  int k_max = 0;
  for (int i = 0; i < n_slots; ++i) {
    if (alive[static_cast<size_t>(i)]) k_max = std::max(k_max, in_degree[static_cast<size_t>(i)]);
  }
  m.max_in_degree = k_max;
  const double pairs = static_cast<double>(n) * (n - 1);
  if (m.edges > 0) {
    double spread = 0.0;
    for (int i = 0; i < n_slots; ++i) {
      if (alive[static_cast<size_t>(i)]) spread += k_max - in_degree[static_cast<size_t>(i)];
    }
    m.centrality = spread / (pairs - m.edges);
    m.density = m.edges / pairs;
  }

  // Components and per-component eccentricities by BFS from every node.
  std::vector<int> component(static_cast<size_t>(n_slots), -1);
  std::vector<int> dist(static_cast<size_t>(n_slots));
  std::queue<int> frontier;
  for (int s = 0; s < n_slots; ++s) {
    if (!alive[static_cast<size_t>(s)]) continue;
    if (component[static_cast<size_t>(s)] < 0) {
      component[static_cast<size_t>(s)] = m.components++;
    }
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<size_t>(s)] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      m.diameter = std::max(m.diameter, dist[static_cast<size_t>(u)]);
      for (int v : undirected[static_cast<size_t>(u)]) {
        if (dist[static_cast<size_t>(v)] >= 0) continue;
        dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
        component[static_cast<size_t>(v)] = component[static_cast<size_t>(s)];
        frontier.push(v);
      }
    }
  }
  m.avg_nodes_per_component = static_cast<double>(n) / m.components;
  return m;
}

NetworkMetrics ComputeNetworkMetrics(const CreditGraph& graph) {
  return ComputeNetworkMetrics(graph, std::vector<bool>(static_cast<size_t>(graph.size()), true));
}

std::vector<double> InDegreeDdf(std::span<const int> in_degrees) {
  if (in_degrees.empty()) return {};
  const int k_max = *std::max_element(in_degrees.begin(), in_degrees.end());
  std::vector<double> ddf(static_cast<size_t>(k_max) + 1, 0.0);
  for (int x = 0; x <= k_max; ++x) {
    const auto at_least = std::count_if(in_degrees.begin(), in_degrees.end(),
                                        [x](int k) { return k >= x; });
    ddf[static_cast<size_t>(x)] = static_cast<double>(at_least) / in_degrees.size();
  }
  return ddf;
}

HubPoint FindHub(std::span<const int> in_degrees, std::span<const double> fitness,
                 const std::vector<bool>& alive) {
  HubPoint hub;
  for (size_t i = 0; i < in_degrees.size(); ++i) {
    if (!alive[i]) continue;
    if (hub.hub_id < 0 || in_degrees[i] > hub.hub_in_degree) {
      hub.hub_id = static_cast<int>(i);
      hub.hub_in_degree = in_degrees[i];
    }
  }
  if (hub.hub_id >= 0) {
    hub.hub_id_normalized = static_cast<double>(hub.hub_id) / in_degrees.size();
    hub.hub_fitness = fitness[static_cast<size_t>(hub.hub_id)];
  }
  return hub;
}

}  // namespace ibrl
