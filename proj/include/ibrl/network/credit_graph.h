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

#ifndef IBRL_NETWORK_CREDIT_GRAPH_H_
#define IBRL_NETWORK_CREDIT_GRAPH_H_

#include <utility>
#include <vector>

#include "ibrl/common/rng.h"

namespace ibrl {

// Directed credit lines. A link borrower -> lender means the borrower may
// draw on the lender's liquidity this period. Every bank holds at most
// `max_out_degree` outgoing links and any number of incoming ones.
class CreditGraph {
 public:
  CreditGraph() = default;
  explicit CreditGraph(int num_banks, int max_out_degree = 1);

  int size() const { return static_cast<int>(out_.size()); }
  int max_out_degree() const { return max_out_degree_; }

  const std::vector<int>& Lenders(int borrower) const { return out_.at(borrower); }
  bool HasLink(int borrower, int lender) const;
  bool IsIsolated(int borrower) const { return out_.at(borrower).empty(); }

  // Throws std::invalid_argument on self loops, duplicates or a full slot.
  void AddLink(int borrower, int lender);
  void ReplaceLink(int borrower, int old_lender, int new_lender);
  void ClearOutLinks(int borrower);
  void RemoveInLinks(int lender);

  std::vector<int> InDegrees() const;
  int NumEdges() const;
  // (borrower, lender) pairs, sorted.
  std::vector<std::pair<int, int>> Edges() const;

 private:
  int max_out_degree_ = 1;
  std::vector<std::vector<int>> out_;
};

// Draws the t=0 outgoing links of `borrower`: with probability
// `isolation_prob` the bank stays isolated, otherwise it links to
// max_out_degree distinct banks drawn uniformly among the alive ones.
void DrawInitialLinks(CreditGraph& graph, const std::vector<bool>& alive,
                      int borrower, double isolation_prob, Rng& rng);

}  // namespace ibrl

#endif  // IBRL_NETWORK_CREDIT_GRAPH_H_
