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
#include <optional>
#include <span>
#include <vector>

#include "constellation/ingest.hpp"

namespace constellation {

struct GraphNode {
  CategoryId id = 0;
  std::string name;
  std::string supercategory;

  bool operator==(const GraphNode&) const = default;
};

/// Undirected weighted link, source < target. The integer counts are kept
/// next to the weight so |A∩B|/|A∪B| can be recomputed exactly.
struct GraphEdge {
  CategoryId source = 0;
  CategoryId target = 0;
  double weight = 0.0;
  std::uint64_t intersection = 0;
  std::uint64_t union_ = 0;

  bool operator==(const GraphEdge&) const = default;
};

struct GraphProvenance {
  std::uint64_t images = 0;
  std::uint64_t annotations = 0;
  bool include_crowd = true;

  bool operator==(const GraphProvenance&) const = default;
};

/// The co-occurrence network. Nodes ascend by id; edges ascend by
/// (source, target) and all carry weight in (0, 1]. Isolated nodes stay.
class ConstellationGraph {
 public:
  ConstellationGraph() = default;

  /// Validates ordering, weight range and endpoint membership; throws
  /// IntegrityError otherwise.
  ConstellationGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges, GraphProvenance provenance = {});

  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  const GraphProvenance& provenance() const noexcept { return provenance_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Position of a node id in nodes(); throws LookupError.
  std::size_t position(CategoryId id) const;
  std::optional<std::size_t> find(CategoryId id) const noexcept;

  bool operator==(const ConstellationGraph&) const = default;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  GraphProvenance provenance_;
};

inline constexpr double kMaxThreshold = 0.5;

/// Edge subset of a graph at a slider threshold. Holds a pointer to the
/// base graph, which must outlive it.
class ThresholdedGraph {
 public:
  ThresholdedGraph(const ConstellationGraph& base, double threshold, std::vector<GraphEdge> retained)
      : base_(&base), threshold_(threshold), edges_(std::move(retained)) {}

  const ConstellationGraph& base() const noexcept { return *base_; }
  double threshold() const noexcept { return threshold_; }
  const std::vector<GraphNode>& nodes() const noexcept { return base_->nodes(); }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

 private:
  const ConstellationGraph* base_;
  double threshold_;
  std::vector<GraphEdge> edges_;
};

/// |A∩B| / |A∪B| for two categories of the index, 0 when both are empty.
/// Throws LookupError for unknown ids and DomainError when a == b.
double jaccard(const CategoryImageIndex& index, CategoryId a, CategoryId b);

enum class PairCounting {
  per_image,   // one pass over images, counting co-occurring category pairs
  bitset,      // AND/OR popcount over every category pair
};

ConstellationGraph build_graph(const CategoryImageIndex& index, PairCounting counting = PairCounting::per_image);

/// Keeps edges with weight >= threshold (every edge at threshold 0).
/// Throws DomainError unless 0 <= threshold <= 0.5.
ThresholdedGraph filter(const ConstellationGraph& graph, double threshold);

/// The unfiltered view (threshold 0).
ThresholdedGraph unfiltered(const ConstellationGraph& graph);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double average_degree = 0.0;
  double weight_min = 0.0;
  double weight_max = 0.0;
  double weight_mean = 0.0;
};

GraphStats stats(std::size_t node_count, std::span<const GraphEdge> edges);
inline GraphStats stats(const ConstellationGraph& graph) { return stats(graph.node_count(), graph.edges()); }
inline GraphStats stats(const ThresholdedGraph& graph) { return stats(graph.nodes().size(), graph.edges()); }

}  // namespace constellation
