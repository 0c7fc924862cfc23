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


#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace fixtures {

using constellation::AnnotationRecord;
using constellation::CategoryRecord;
using constellation::GraphEdge;
using constellation::GraphNode;
using constellation::ImageRecord;

AnnotationDataset three_image() {
  AnnotationDataset d;
  d.images = {{1}, {2}, {3}};
  d.categories = {{1, "a", "letters"}, {2, "b", "letters"}, {3, "c", "letters"}};
  d.annotations = {{1, 1, false}, {1, 2, false}, {2, 1, false}, {3, 2, false}, {3, 3, false}};
  return d;
}

std::string to_coco_json(const AnnotationDataset& dataset, bool pretty) {
  nlohmann::json doc;
  doc["info"] = {{"description", "fixture"}, {"version", "1.0"}, {"year", 2017}};
  doc["licenses"] = nlohmann::json::array({{{"id", 1}, {"name", "cc"}, {"url", "http://example"}}});
  doc["images"] = nlohmann::json::array();
  for (const auto& img : dataset.images) {
    doc["images"].push_back({{"license", 1},
                             {"file_name", std::to_string(img.id) + ".jpg"},
                             {"height", 480},
                             {"width", 640},
                             {"id", img.id}});
  }
  doc["annotations"] = nlohmann::json::array();
  std::int64_t ann_id = 1;
  for (const auto& a : dataset.annotations) {
    nlohmann::json segmentation;
    if (a.iscrowd) {
      segmentation = {{"counts", {12, 3, 40}}, {"size", {480, 640}}};
    } else {
      segmentation = nlohmann::json::array({{10.5, 20.25, 30.0, 40.0, 12.0, 18.0}});
    }
    doc["annotations"].push_back({{"segmentation", segmentation},
                                  {"area", 123.5},
                                  {"iscrowd", a.iscrowd ? 1 : 0},
                                  {"image_id", a.image_id},
                                  {"bbox", {1.0, 2.0, 3.5, 4.5}},
                                  {"category_id", a.category_id},
                                  {"id", ann_id++}});
  }
  doc["categories"] = nlohmann::json::array();
  for (const auto& c : dataset.categories) {
    doc["categories"].push_back({{"supercategory", c.supercategory}, {"id", c.id}, {"name", c.name}});
  }
  return pretty ? doc.dump(2) : doc.dump();
}

AnnotationDataset random_dataset(std::mt19937_64& rng, std::size_t max_images, std::size_t max_categories) {
  std::uniform_int_distribution<std::size_t> n_images(1, max_images);
  std::uniform_int_distribution<std::size_t> n_categories(1, max_categories);
  std::bernoulli_distribution coin(0.4);
  std::bernoulli_distribution crowd(0.1);
  std::uniform_int_distribution<int> repeats(1, 3);

  AnnotationDataset d;
  const std::size_t images = n_images(rng);
  const std::size_t categories = n_categories(rng);
  for (std::size_t i = 0; i < images; ++i) d.images.push_back({static_cast<std::int64_t>(100 + 7 * i)});
  for (std::size_t c = 0; c < categories; ++c) {
    const auto id = static_cast<std::int64_t>(3 * c + 1);
    d.categories.push_back({id, "cat" + std::to_string(id), "group" + std::to_string(c % 2)});
  }
  for (const auto& img : d.images) {
    for (const auto& cat : d.categories) {
      if (!coin(rng)) continue;
      const int k = repeats(rng);
      for (int r = 0; r < k; ++r) d.annotations.push_back({img.id, cat.id, crowd(rng)});
    }
  }
  std::shuffle(d.annotations.begin(), d.annotations.end(), rng);
  return d;
}

AnnotationDataset synthetic_coco(std::uint64_t seed, std::size_t images, std::size_t categories) {
  std::mt19937_64 rng(seed);
  AnnotationDataset d;

  // COCO-like sparse ids: skip every ninth id.
  std::int64_t next = 1;
  for (std::size_t c = 0; c < categories; ++c) {
    if (next % 9 == 0) ++next;
    d.categories.push_back({next, "object " + std::to_string(next), "super" + std::to_string(c % 11)});
    ++next;
  }

  // Scenes draw from overlapping blocks of categories. The last category
  // only ever appears alone.
  const std::size_t scenes = 10;
  const std::size_t block = std::max<std::size_t>(1, (categories - 1) / scenes);
  std::uniform_int_distribution<std::size_t> pick_scene(0, scenes - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> instances(1, 4);

  for (std::size_t i = 0; i < images; ++i) {
    const auto image_id = static_cast<std::int64_t>(1000 + 13 * i);
    d.images.push_back({image_id});
    if (i % 97 == 0) continue;  // unannotated image
    if (i % 53 == 0) {
      d.annotations.push_back({image_id, d.categories.back().id, false});
      continue;
    }
    const std::size_t scene = pick_scene(rng);
    if (unit(rng) < 0.5) d.annotations.push_back({image_id, d.categories.front().id, unit(rng) < 0.05});
    for (std::size_t c = 1; c + 1 < categories; ++c) {
      const std::size_t home = (c - 1) / block;
      double p = 0.01;
      if (home == scene) p = 0.35;
      else if (home == (scene + 1) % scenes) p = 0.08;
      if (unit(rng) < p) {
        const int k = instances(rng);
        for (int r = 0; r < k; ++r) d.annotations.push_back({image_id, d.categories[c].id, unit(rng) < 0.02});
      }
    }
  }
  return d;
}

BruteCounts brute_force_counts(const AnnotationDataset& dataset, CategoryId a, CategoryId b, bool include_crowd) {
  std::set<std::int64_t> set_a, set_b;
  for (const auto& ann : dataset.annotations) {
    if (ann.iscrowd && !include_crowd) continue;
    if (ann.category_id == a) set_a.insert(ann.image_id);
    if (ann.category_id == b) set_b.insert(ann.image_id);
  }
  std::set<std::int64_t> both, either;
  std::set_intersection(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(), std::inserter(both, both.end()));
  std::set_union(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(), std::inserter(either, either.end()));
  return {both.size(), either.size()};
}

ConstellationGraph make_graph(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  std::vector<GraphNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({static_cast<CategoryId>(i), "n" + std::to_string(i), "test"});
  }
  std::map<std::pair<std::size_t, std::size_t>, double> canonical;
  for (const auto& [u, v, w] : edges) canonical[{std::min(u, v), std::max(u, v)}] = w;

  std::vector<GraphEdge> out;
  for (const auto& [key, w] : canonical) {
    const auto inter = static_cast<std::uint64_t>(std::llround(w * 10000.0));
    const std::uint64_t uni = 10000;
    out.push_back({static_cast<CategoryId>(key.first), static_cast<CategoryId>(key.second),
                   static_cast<double>(inter) / static_cast<double>(uni), inter, uni});
  }
  return ConstellationGraph(std::move(nodes), std::move(out));
}

ConstellationGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution link(p);
  std::uniform_int_distribution<int> weight(1, 100);
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (link(rng)) edges.emplace_back(u, v, weight(rng) / 100.0);
    }
  }
  return make_graph(n, edges);
}

double dense_modularity(const ConstellationGraph& graph, const std::vector<std::size_t>& membership) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : graph.edges()) {
    const auto u = graph.position(e.source);
    const auto v = graph.position(e.target);
    a[u][v] += e.weight;
    a[v][u] += e.weight;
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (membership[i] == membership[j]) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

Optimum exhaustive_modularity(const ConstellationGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n > 10) throw std::invalid_argument("exhaustive search is limited to 10 nodes");
  Optimum best;
  best.modularity = -std::numeric_limits<double>::infinity();
  if (n == 0) return Optimum{0.0, {}};

  // Restricted growth strings enumerate every set partition exactly once.
  std::vector<std::size_t> labels(n, 0);
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      const double q = dense_modularity(graph, labels);
      if (q > best.modularity) best = Optimum{q, labels};
      return;
    }
    for (std::size_t c = 0; c <= used && c < n; ++c) {
      labels[i] = c;
      visit(i + 1, std::max(used, c + 1));
    }
  };
  labels[0] = 0;
  visit(1, 1);
  return best;
}

}  // namespace fixtures
