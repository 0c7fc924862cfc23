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


#include "constellation/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "constellation/errors.hpp"

namespace constellation::io {
namespace {

Json meta_of(const ConstellationGraph& graph) {
  Json meta;
  meta["format_version"] = kFormatVersion;
  meta["images"] = graph.provenance().images;
  meta["annotations"] = graph.provenance().annotations;
  meta["categories"] = graph.node_count();
  meta["include_crowd"] = graph.provenance().include_crowd;
  return meta;
}

Json nodes_of(const std::vector<GraphNode>& nodes) {
  Json out = Json::array();
  for (const auto& n : nodes) {
    out.push_back({{"id", n.id}, {"name", n.name}, {"supercategory", n.supercategory}});
  }
  return out;
}

Json edges_of(const std::vector<GraphEdge>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) {
    out.push_back({{"source", e.source},
                   {"target", e.target},
                   {"weight", e.weight},
                   {"intersection", e.intersection},
                   {"union", e.union_}});
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

Json to_json(const ConstellationGraph& graph) {
  Json doc;
  doc["meta"] = meta_of(graph);
  doc["nodes"] = nodes_of(graph.nodes());
  doc["edges"] = edges_of(graph.edges());
  return doc;
}

Json to_json(const ThresholdedGraph& graph) {
  Json doc;
  doc["meta"] = meta_of(graph.base());
  doc["meta"]["threshold"] = graph.threshold();
  doc["nodes"] = nodes_of(graph.nodes());
  doc["edges"] = edges_of(graph.edges());
  return doc;
}

Json to_json(const community::CommunityAssignment& assignment) {
  return Json{{"threshold", assignment.threshold},
              {"modularity", assignment.modularity},
              {"membership", assignment.membership}};
}

Json to_json(const ego::EgoTree& tree, double threshold) {
  Json params;
  params["threshold"] = threshold;
  params["initial_energy"] = tree.params.initial_energy;
  params["decay"] = tree.params.decay;
  params["fire_threshold"] = tree.params.fire_threshold;
  if (tree.params.max_depth == std::numeric_limits<std::size_t>::max()) {
    params["max_depth"] = nullptr;
  } else {
    params["max_depth"] = tree.params.max_depth;
  }

  Json members = Json::array();
  for (const auto& m : tree.members) {
    Json member{{"id", m.id}, {"energy", m.energy}, {"depth", m.depth}};
    if (m.parent) {
      member["parent"] = *m.parent;
    } else {
      member["parent"] = nullptr;
    }
    members.push_back(std::move(member));
  }
  return Json{{"focus", tree.focus}, {"params", std::move(params)}, {"members", std::move(members)}};
}

Json to_json(const GraphStats& s) {
  return Json{{"nodes", s.nodes},           {"edges", s.edges},           {"average_degree", s.average_degree},
              {"weight_min", s.weight_min}, {"weight_max", s.weight_max}, {"weight_mean", s.weight_mean}};
}

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

ConstellationGraph graph_from_json(const Json& document) {
  try {
    if (!document.is_object()) throw ParseError("graph document must be an object");
    GraphProvenance provenance;
    if (const auto meta = document.find("meta"); meta != document.end()) {
      const int version = meta->value("format_version", kFormatVersion);
      if (version != kFormatVersion) {
        throw ParseError("unsupported graph format_version " + std::to_string(version));
      }
      provenance.images = meta->value("images", std::uint64_t{0});
      provenance.annotations = meta->value("annotations", std::uint64_t{0});
      provenance.include_crowd = meta->value("include_crowd", true);
    }

    std::vector<GraphNode> nodes;
    for (const auto& n : document.at("nodes")) {
      nodes.push_back({n.at("id").get<CategoryId>(), n.at("name").get<std::string>(),
                       n.value("supercategory", std::string{})});
    }
    std::vector<GraphEdge> edges;
    for (const auto& e : document.at("edges")) {
      edges.push_back({e.at("source").get<CategoryId>(), e.at("target").get<CategoryId>(), e.at("weight").get<double>(),
                       e.at("intersection").get<std::uint64_t>(), e.at("union").get<std::uint64_t>()});
    }
    return ConstellationGraph(std::move(nodes), std::move(edges), provenance);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid graph document: ") + e.what());
  }
}

ConstellationGraph parse_graph(std::string_view text) {
  Json document;
  try {
    document = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t line = line_of(text, e.byte);
    throw ParseError("malformed graph document at byte " + std::to_string(e.byte) + " (line " + std::to_string(line) +
                         "): " + e.what(),
                     e.byte, line);
  }
  return graph_from_json(document);
}

ConstellationGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open graph file " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_graph(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte(), e.line());
  } catch (const IntegrityError& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

void save_graph(const ConstellationGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write graph file " + path.string());
  out << dump(to_json(graph));
  if (!out) throw Error("failed writing graph file " + path.string());
}

}  // namespace constellation::io
