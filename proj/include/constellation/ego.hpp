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
#include <limits>
#include <optional>
#include <vector>

#include "constellation/cograph.hpp"

namespace constellation::ego {

struct EgoParams {
  double initial_energy = 1.0;
  double decay = 0.8;
  double fire_threshold = 0.05;
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();

  /// Throws DomainError on decay outside (0,1], non-positive energy or
  /// fire threshold, or fire_threshold >= initial_energy.
  void validate() const;
};

struct EgoMember {
  CategoryId id = 0;
  double energy = 0.0;
  std::size_t depth = 0;
  std::optional<CategoryId> parent;

  bool operator==(const EgoMember&) const = default;
};

struct EgoTree {
  CategoryId focus = 0;
  EgoParams params;
  /// Ordered by (depth, descending energy, id); the focus comes first.
  std::vector<EgoMember> members;

  const EgoMember* find(CategoryId id) const noexcept;
};

/// Spreading activation from `focus` over the retained edges.
///
/// Best-first: the unvisited candidate with the most energy (smaller id on
/// ties) is fixed next and offers energy * weight * decay to each unvisited
/// neighbor. Offers below the fire threshold are dropped; a node keeps the
/// largest offer it received before being fixed.
EgoTree expand(const ThresholdedGraph& graph, CategoryId focus, const EgoParams& params = {});

}  // namespace constellation::ego
