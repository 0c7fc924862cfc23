// Copyright 2026 The Constellation Authors. All Rights Reserved.
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


#include "constellation/ego.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "constellation/errors.hpp"

namespace constellation::ego {

void EgoParams::validate() const {
  if (!(initial_energy > 0.0) || !std::isfinite(initial_energy)) throw DomainError("initial energy must be positive");
  if (!(decay > 0.0 && decay <= 1.0)) throw DomainError("decay must lie in (0, 1]");
  if (!(fire_threshold > 0.0)) throw DomainError("fire threshold must be positive");
  if (!(fire_threshold < initial_energy)) throw DomainError("fire threshold must be below the initial energy");
}

const EgoMember* EgoTree::find(CategoryId id) const noexcept {
  const auto it = std::find_if(members.begin(), members.end(), [id](const EgoMember& m) { return m.id == id; });
  return it == members.end() ? nullptr : &*it;
}

EgoTree expand(const ThresholdedGraph& graph, CategoryId focus, const EgoParams& params) {
  params.validate();
  const auto& base = graph.base();
  const std::size_t root = base.position(focus);
  const std::size_t n = base.node_count();

  struct Neighbor {
    std::size_t node;
    double weight;
  };
  std::vector<std::vector<Neighbor>> adjacency(n);
  for (const auto& e : graph.edges()) {
    const std::size_t u = base.position(e.source);
    const std::size_t v = base.position(e.target);
    adjacency[u].push_back({v, e.weight});
    adjacency[v].push_back({u, e.weight});
  }

  struct Offer {
    double energy = 0.0;
    std::size_t depth = 0;
    std::optional<std::size_t> parent;
  };
  std::vector<std::optional<Offer>> best(n);
  std::vector<bool> fixed(n, false);

  // Max-energy first; equal energy extracts the smaller node id (nodes are
  // stored in ascending id order, so position order is id order).
  struct Candidate {
    double energy;
    std::size_t node;
    bool operator<(const Candidate& o) const {
      if (energy != o.energy) return energy < o.energy;
      return node > o.node;
    }
  };
  std::priority_queue<Candidate> frontier;

  best[root] = Offer{params.initial_energy, 0, std::nullopt};
  frontier.push({params.initial_energy, root});

  std::vector<std::size_t> order;
  while (!frontier.empty()) {
    const Candidate top = frontier.top();
    frontier.pop();
    if (fixed[top.node] || top.energy != best[top.node]->energy) continue;
    fixed[top.node] = true;
    order.push_back(top.node);

    const Offer& here = *best[top.node];
    if (here.depth >= params.max_depth) continue;
    for (const auto& nb : adjacency[top.node]) {
      if (fixed[nb.node]) continue;
      const double energy = here.energy * nb.weight * params.decay;
      if (energy < params.fire_threshold) continue;
      if (best[nb.node] && best[nb.node]->energy >= energy) continue;
      best[nb.node] = Offer{energy, here.depth + 1, top.node};
      frontier.push({energy, nb.node});
    }
  }

  EgoTree tree;
  tree.focus = focus;
  tree.params = params;
  tree.members.reserve(order.size());
  for (const std::size_t node : order) {
    const Offer& o = *best[node];
    EgoMember m;
    m.id = base.nodes()[node].id;
    m.energy = o.energy;
    m.depth = o.depth;
    if (o.parent) m.parent = base.nodes()[*o.parent].id;
    tree.members.push_back(m);
  }
  std::stable_sort(tree.members.begin(), tree.members.end(), [](const EgoMember& a, const EgoMember& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.energy != b.energy) return a.energy > b.energy;
    return a.id < b.id;
  });
  return tree;
}

}  // namespace constellation::ego
