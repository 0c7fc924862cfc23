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


#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "constellation/cograph.hpp"

namespace constellation::community {

/// Symmetric weighted adjacency used by the optimizer. `self_loop[i]` is
/// the diagonal entry A_ii (condensed graphs carry internal weight there,
/// counted twice per undirected internal edge); `adjacency[i]` lists the
/// off-diagonal neighbors j != i with A_ij.
struct WeightedGraph {
  struct Link {
    std::size_t target;
    double weight;
  };

  std::vector<std::vector<Link>> adjacency;
  std::vector<double> self_loop;

  explicit WeightedGraph(std::size_t n = 0) : adjacency(n), self_loop(n, 0.0) {}

  std::size_t size() const noexcept { return adjacency.size(); }
  void add_edge(std::size_t u, std::size_t v, double w);
  double degree(std::size_t i) const noexcept;
  /// Sum of all degrees, i.e. 2m.
  double total_degree() const noexcept;
};

WeightedGraph to_weighted(const ThresholdedGraph& graph);

/// Newman modularity
///   Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j).
/// A graph without weight has Q = 0 by definition.
double modularity(const WeightedGraph& graph, std::span<const std::size_t> membership);
double modularity(const ThresholdedGraph& graph, std::span<const std::size_t> membership);

struct LouvainOptions {
  /// Visit nodes in a seeded random order instead of ascending order.
  bool shuffle = false;
  std::uint64_t seed = 0;
  /// A move must beat staying put by more than this.
  double min_gain = 1e-9;
  /// Extra passes in seeded random order; the best-Q pass wins, ties going
  /// to the earliest. Pass 0 uses the order selected by `shuffle`.
  std::size_t restarts = 4;
};

struct LouvainResult {
  std::vector<std::size_t> membership;  // canonical community index per node
  double modularity = 0.0;
  std::size_t levels = 0;
  std::size_t pass = 0;  // which pass produced this result
  /// Q of the winning pass: the initial singleton partition, then after every
  /// local-move sweep and every adopted refinement.
  std::vector<double> trace;
};

/// Louvain local moves and condensation, followed by Kernighan-Lin
/// refinement and merge/move perturbations on the original graph until
/// nothing raises Q. Runs 1 + `restarts` passes and keeps the best.
LouvainResult louvain(const WeightedGraph& graph, const LouvainOptions& options = {});

/// Relabels communities 0..k-1 by descending size, ties by smallest member.
std::vector<std::size_t> canonicalize(std::span<const std::size_t> membership);

struct CommunityAssignment {
  double threshold = 0.0;
  std::vector<std::size_t> membership;  // community index per node, node order
  double modularity = 0.0;
  std::vector<std::size_t> sizes;       // indexed by community

  std::size_t count() const noexcept { return sizes.size(); }
  bool operator==(const CommunityAssignment&) const = default;
};

/// Louvain over the retained edges. Deterministic: ascending node order,
/// smallest-index tie break. `seed` is used only by the shuffled mode.
CommunityAssignment detect(const ThresholdedGraph& graph, std::uint64_t seed = 0);
CommunityAssignment detect(const ThresholdedGraph& graph, const LouvainOptions& options);

}  // namespace constellation::community
