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


#include "ibrl/analysis/topology_null.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ibrl/analysis/stats.h"

namespace ibrl {

int MaxInDegree(const std::vector<std::pair<int, int>>& edges, int num_banks) {
  std::vector<int> in(num_banks, 0);
  int best = 0;
  for (const auto& [borrower, lender] : edges) best = std::max(best, ++in.at(lender));
  return best;
}

std::vector<std::pair<int, int>> RetargetEdges(const std::vector<std::pair<int, int>>& edges,
                                               int num_banks, Rng& rng) {
  if (num_banks < 2) throw std::invalid_argument("need at least two banks");
  std::map<int, std::vector<int>> chosen;
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (const auto& [borrower, lender] : edges) {
    std::vector<int>& taken = chosen[borrower];
    if (static_cast<int>(taken.size()) >= num_banks - 1) {
      throw std::invalid_argument("borrower has more links than possible lenders");
    }
    int target;
    do {
      target = rng.UniformInt(num_banks);
    } while (target == borrower || std::find(taken.begin(), taken.end(), target) != taken.end());
    taken.push_back(target);
    out.emplace_back(borrower, target);
  }
  return out;
}

HeavyTailTest TopologyNullTest(const std::vector<EdgeSnapshot>& snapshots, int num_banks,
                               int draws, uint64_t seed) {
  if (snapshots.empty()) throw std::invalid_argument("no snapshots to test");
  if (draws < 1) throw std::invalid_argument("draws must be positive");
  HeavyTailTest test;
  for (const EdgeSnapshot& s : snapshots) test.observed += MaxInDegree(s.edges, num_banks);
  test.observed /= static_cast<double>(snapshots.size());
  Rng rng(seed);
  std::vector<double> null_stats(draws, 0.0);
  for (int d = 0; d < draws; ++d) {
    for (const EdgeSnapshot& s : snapshots) {
      null_stats[d] += MaxInDegree(RetargetEdges(s.edges, num_banks, rng), num_banks);
    }
    null_stats[d] /= static_cast<double>(snapshots.size());
  }
  test.null_q99 = Quantile(null_stats, 0.99);
  test.exceeds = test.observed > test.null_q99;
  return test;
}

}  // namespace ibrl
