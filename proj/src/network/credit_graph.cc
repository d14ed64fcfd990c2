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

#include "ibrl/network/credit_graph.h"

#include <algorithm>
#include <stdexcept>

namespace ibrl {

CreditGraph::CreditGraph(int num_banks, int max_out_degree)
    : max_out_degree_(max_out_degree), out_(static_cast<size_t>(num_banks)) {
  if (num_banks < 0) throw std::invalid_argument("CreditGraph: negative size");
  if (max_out_degree < 1) throw std::invalid_argument("CreditGraph: max_out_degree < 1");
}

bool CreditGraph::HasLink(int borrower, int lender) const {
  const auto& links = out_.at(borrower);
  return std::find(links.begin(), links.end(), lender) != links.end();
}

void CreditGraph::AddLink(int borrower, int lender) {
  if (borrower == lender) throw std::invalid_argument("CreditGraph: self loop");
  if (lender < 0 || lender >= size()) throw std::out_of_range("CreditGraph: lender id");
  auto& links = out_.at(borrower);
  if (static_cast<int>(links.size()) >= max_out_degree_) {
    throw std::invalid_argument("CreditGraph: out-degree limit reached");
  }
  if (HasLink(borrower, lender)) throw std::invalid_argument("CreditGraph: duplicate link");
  links.push_back(lender);
}

void CreditGraph::ReplaceLink(int borrower, int old_lender, int new_lender) {
  if (borrower == new_lender) throw std::invalid_argument("CreditGraph: self loop");
  if (new_lender < 0 || new_lender >= size()) {
    throw std::out_of_range("CreditGraph: lender id");
  }
  if (HasLink(borrower, new_lender)) throw std::invalid_argument("CreditGraph: duplicate link");
  auto& links = out_.at(borrower);
  auto it = std::find(links.begin(), links.end(), old_lender);
  if (it == links.end()) throw std::invalid_argument("CreditGraph: no such link");
  *it = new_lender;
}

void CreditGraph::ClearOutLinks(int borrower) { out_.at(borrower).clear(); }

void CreditGraph::RemoveInLinks(int lender) {
  for (auto& links : out_) {
    links.erase(std::remove(links.begin(), links.end(), lender), links.end());
  }
}

std::vector<int> CreditGraph::InDegrees() const {
  std::vector<int> degrees(out_.size(), 0);
  for (const auto& links : out_) {
    for (int lender : links) ++degrees[static_cast<size_t>(lender)];
  }
  return degrees;
}

int CreditGraph::NumEdges() const {
  int edges = 0;
  for (const auto& links : out_) edges += static_cast<int>(links.size());
  return edges;
}

std::vector<std::pair<int, int>> CreditGraph::Edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < size(); ++b) {
    for (int l : out_[static_cast<size_t>(b)]) edges.emplace_back(b, l);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

void DrawInitialLinks(CreditGraph& graph, const std::vector<bool>& alive, int borrower,
                      double isolation_prob, Rng& rng) {
  graph.ClearOutLinks(borrower);
  if (rng.Bernoulli(isolation_prob)) return;
  std::vector<int> candidates;
  for (int k = 0; k < graph.size(); ++k) {
    if (k != borrower && alive[static_cast<size_t>(k)]) candidates.push_back(k);
  }
  const int links = std::min<int>(graph.max_out_degree(), static_cast<int>(candidates.size()));
  for (int n = 0; n < links; ++n) {
    const int pick = rng.UniformInt(static_cast<int>(candidates.size()));
    graph.AddLink(borrower, candidates[static_cast<size_t>(pick)]);
    candidates.erase(candidates.begin() + pick);
  }
}

}  // namespace ibrl
