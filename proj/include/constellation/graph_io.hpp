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

#include <filesystem>
#include <string>
#include <string_view>

#include "constellation/cograph.hpp"
#include "constellation/community.hpp"
#include "constellation/ego.hpp"
#include "json.hpp"

namespace constellation::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Node-link document: {"meta", "nodes", "edges"}.
Json to_json(const ConstellationGraph& graph);
/// Same layout for a filtered view, edges restricted to the retained set and
/// "meta.threshold" set.
Json to_json(const ThresholdedGraph& graph);
Json to_json(const community::CommunityAssignment& assignment);
/// `threshold` is the edge threshold the tree was expanded under.
Json to_json(const ego::EgoTree& tree, double threshold);
Json to_json(const GraphStats& stats);

/// Serialized form used on disk and over HTTP: two-space indented, trailing
/// newline. Stable for identical input.
std::string dump(const Json& document);

ConstellationGraph graph_from_json(const Json& document);
ConstellationGraph parse_graph(std::string_view text);
ConstellationGraph load_graph(const std::filesystem::path& path);
void save_graph(const ConstellationGraph& graph, const std::filesystem::path& path);

}  // namespace constellation::io
