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


#include "constellation/cograph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "constellation/errors.hpp"
#include "constellation/kernels/bitcount.hpp"

namespace constellation {
namespace {

GraphEdge make_edge(CategoryId source, CategoryId target, std::uint64_t intersection, std::uint64_t union_) {
  return GraphEdge{source, target, static_cast<double>(intersection) / static_cast<double>(union_), intersection,
                   union_};
}

std::vector<GraphNode> nodes_of(const CategoryImageIndex& index) {
  std::vector<GraphNode> nodes;
  nodes.reserve(index.entries().size());
  for (const auto& e : index.entries()) nodes.push_back({e.category.id, e.category.name, e.category.supercategory});
  return nodes;
}

std::vector<GraphEdge> edges_per_image(const CategoryImageIndex& index) {
  const auto& entries = index.entries();
  const std::size_t n = entries.size();
  const std::size_t images = index.universe().size();

  // Category positions present in each image, ascending (categories are
  // visited in ascending order).
  std::vector<std::vector<std::uint32_t>> per_image(images);
  for (std::size_t c = 0; c < n; ++c) {
    const auto& bits = entries[c].bits;
    for (std::size_t w = 0; w < bits.size(); ++w) {
      std::uint64_t word = bits[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        per_image[w * 64 + bit].push_back(static_cast<std::uint32_t>(c));
        word &= word - 1;
      }
    }
  }

  std::vector<std::uint64_t> together(n * n, 0);
  for (const auto& cats : per_image) {
    for (std::size_t i = 0; i < cats.size(); ++i) {
      for (std::size_t j = i + 1; j < cats.size(); ++j) ++together[cats[i] * n + cats[j]];
    }
  }

  std::vector<GraphEdge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::uint64_t both = together[a * n + b];
      if (both == 0) continue;
      const std::uint64_t either = entries[a].images.size() + entries[b].images.size() - both;
      edges.push_back(make_edge(entries[a].category.id, entries[b].category.id, both, either));
    }
  }
  return edges;
}

std::vector<GraphEdge> edges_bitset(const CategoryImageIndex& index) {
  const auto& entries = index.entries();
  const auto& k = kernels::active();
  std::vector<GraphEdge> edges;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      const auto counts = k.set_counts(entries[a].bits, entries[b].bits);
      if (counts.intersection == 0) continue;
      edges.push_back(make_edge(entries[a].category.id, entries[b].category.id, counts.intersection, counts.union_));
    }
  }
  return edges;
}

}  // namespace

ConstellationGraph::ConstellationGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
                                       GraphProvenance provenance)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), provenance_(provenance) {
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i - 1].id >= nodes_[i].id) {
      throw IntegrityError("nodes must be strictly ascending by id (node " + std::to_string(nodes_[i].id) + ")");
    }
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const std::string label = "edge " + std::to_string(e.source) + "-" + std::to_string(e.target);
    if (e.source >= e.target) throw IntegrityError(label + ": source must be smaller than target");
    if (!find(e.source) || !find(e.target)) throw IntegrityError(label + ": endpoint is not a node");
    if (i > 0) {
      const auto& p = edges_[i - 1];
      if (std::pair(p.source, p.target) >= std::pair(e.source, e.target)) {
        throw IntegrityError(label + ": edges must be strictly ascending by (source, target)");
      }
    }
    if (!(e.weight > 0.0 && e.weight <= 1.0)) throw IntegrityError(label + ": weight outside (0, 1]");
    if (e.intersection == 0 || e.intersection > e.union_) {
      throw IntegrityError(label + ": inconsistent intersection/union counts");
    }
    if (e.weight != static_cast<double>(e.intersection) / static_cast<double>(e.union_)) {
      throw IntegrityError(label + ": weight does not equal intersection/union");
    }
  }
}

std::optional<std::size_t> ConstellationGraph::find(CategoryId id) const noexcept {
  const auto it =
      std::lower_bound(nodes_.begin(), nodes_.end(), id, [](const GraphNode& n, CategoryId v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t ConstellationGraph::position(CategoryId id) const {
  if (const auto pos = find(id)) return *pos;
  throw LookupError("unknown node id " + std::to_string(id));
}

double jaccard(const CategoryImageIndex& index, CategoryId a, CategoryId b) {
  const auto& ea = index.at(a);
  const auto& eb = index.at(b);
  if (a == b) throw DomainError("relation of a category with itself is undefined");
  const auto counts = kernels::set_counts(ea.bits, eb.bits);
  if (counts.union_ == 0) return 0.0;
  return static_cast<double>(counts.intersection) / static_cast<double>(counts.union_);
}

ConstellationGraph build_graph(const CategoryImageIndex& index, PairCounting counting) {
  auto edges = counting == PairCounting::per_image ? edges_per_image(index) : edges_bitset(index);
  GraphProvenance provenance{index.universe().size(), index.annotation_count(), index.include_crowd()};
  return ConstellationGraph(nodes_of(index), std::move(edges), provenance);
}

ThresholdedGraph filter(const ConstellationGraph& graph, double threshold) {
  if (!(threshold >= 0.0 && threshold <= kMaxThreshold)) {
    throw DomainError("threshold " + std::to_string(threshold) + " outside [0, 0.5]");
  }
  std::vector<GraphEdge> retained;
  if (threshold == 0.0) {
    retained = graph.edges();
  } else {
    std::copy_if(graph.edges().begin(), graph.edges().end(), std::back_inserter(retained),
                 [threshold](const GraphEdge& e) { return e.weight >= threshold; });
  }
  return ThresholdedGraph(graph, threshold, std::move(retained));
}

ThresholdedGraph unfiltered(const ConstellationGraph& graph) { return ThresholdedGraph(graph, 0.0, graph.edges()); }

GraphStats stats(std::size_t node_count, std::span<const GraphEdge> edges) {
  GraphStats s;
  s.nodes = node_count;
  s.edges = edges.size();
  s.average_degree = node_count == 0 ? 0.0 : 2.0 * static_cast<double>(edges.size()) / static_cast<double>(node_count);
  if (!edges.empty()) {
    s.weight_min = std::numeric_limits<double>::infinity();
    s.weight_max = 0.0;
    double sum = 0.0;
    for (const auto& e : edges) {
      s.weight_min = std::min(s.weight_min, e.weight);
      s.weight_max = std::max(s.weight_max, e.weight);
      sum += e.weight;
    }
    s.weight_mean = sum / static_cast<double>(edges.size());
  }
  return s;
}

}  // namespace constellation
