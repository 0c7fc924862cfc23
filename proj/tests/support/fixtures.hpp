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

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "constellation/cograph.hpp"
#include "constellation/ingest.hpp"

namespace fixtures {

using constellation::AnnotationDataset;
using constellation::CategoryId;
using constellation::ConstellationGraph;

/// img1:{a,b}, img2:{a}, img3:{b,c} with a=1, b=2, c=3.
AnnotationDataset three_image();

/// COCO instances JSON for a dataset, padded with the fields real files
/// carry (bbox, segmentation, licenses, ...).
std::string to_coco_json(const AnnotationDataset& dataset, bool pretty = false);

/// Up to `max_images` images and `max_categories` categories with random
/// annotations (repeats and crowd flags included). Ids are sparse.
AnnotationDataset random_dataset(std::mt19937_64& rng, std::size_t max_images, std::size_t max_categories);

/// Larger COCO-shaped dataset with correlated categories, used where the
/// real annotations are unavailable.
AnnotationDataset synthetic_coco(std::uint64_t seed, std::size_t images = 4000, std::size_t categories = 80);

/// |A∩B| and |A∪B| from std::set image sets built straight from the
/// annotation list.
struct BruteCounts {
  std::uint64_t intersection = 0;
  std::uint64_t union_ = 0;
};
BruteCounts brute_force_counts(const AnnotationDataset& dataset, CategoryId a, CategoryId b, bool include_crowd = true);

/// Graph whose nodes are 0..n-1 and whose edges carry the given weights.
/// Weights are snapped to k/10000 so the intersection/union bookkeeping holds.
ConstellationGraph make_graph(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges);

/// Random undirected graph on n nodes; each pair linked with probability p
/// and a weight k/100.
ConstellationGraph random_graph(std::mt19937_64& rng, std::size_t n, double p);

/// Newman modularity from a dense adjacency matrix, double sum over (i, j).
double dense_modularity(const ConstellationGraph& graph, const std::vector<std::size_t>& membership);

struct Optimum {
  double modularity = 0.0;
  std::vector<std::size_t> membership;
};
/// Best partition over every set partition of the nodes (n <= 10).
Optimum exhaustive_modularity(const ConstellationGraph& graph);

}  // namespace fixtures
