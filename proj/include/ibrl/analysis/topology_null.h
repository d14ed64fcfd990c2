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


#ifndef IBRL_ANALYSIS_TOPOLOGY_NULL_H_
#define IBRL_ANALYSIS_TOPOLOGY_NULL_H_

#include <cstdint>
#include <vector>

#include "ibrl/env/environment.h"

namespace ibrl {

// Largest in-degree of an edge list over num_banks nodes.
int MaxInDegree(const std::vector<std::pair<int, int>>& edges, int num_banks);

// Keeps every borrower's out-links but sends each to a lender drawn
// uniformly among the other banks (no self-loops, no repeated lender per
// borrower).
std::vector<std::pair<int, int>> RetargetEdges(const std::vector<std::pair<int, int>>& edges,
                                               int num_banks, Rng& rng);

struct HeavyTailTest {
  double observed = 0.0;  // mean over snapshots of the max in-degree
  double null_q99 = 0.0;  // 99th percentile of the same statistic under the null
  bool exceeds = false;
};

// Compares the observed concentration of incoming links with an
// out-degree-preserving random rewiring of the same snapshots.
HeavyTailTest TopologyNullTest(const std::vector<EdgeSnapshot>& snapshots, int num_banks,
                               int draws, uint64_t seed);

}  // namespace ibrl

#endif  // IBRL_ANALYSIS_TOPOLOGY_NULL_H_
