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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "constellation/cograph.hpp"
#include "constellation/community.hpp"

namespace constellation::service {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

using Query = std::map<std::string, std::string>;

/// Read-only API over one loaded graph.
///
///   GET /api/categories
///   GET /api/graph?threshold=t
///   GET /api/ego/{id}?threshold=t&decay=d&fire=f
///   GET /api/stats
///
/// handle() is a pure function of (graph, path, query) and is safe to call
/// from many threads. The only mutable state is the community memo, keyed
/// by the retained edge count: edges are an upper set of the weight order,
/// so the count pins down the retained set exactly.
class Service {
 public:
  explicit Service(ConstellationGraph graph);

  Response handle(const std::string& path, const Query& query) const;

  const ConstellationGraph& graph() const noexcept { return graph_; }
  std::size_t cached_assignments() const;

 private:
  Response categories() const;
  Response graph_view(const Query& query) const;
  Response ego_view(const std::string& id_text, const Query& query) const;
  Response stats_view() const;

  community::CommunityAssignment communities(const ThresholdedGraph& view) const;

  ConstellationGraph graph_;
  std::unordered_map<std::string, CategoryId> by_name_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::size_t, community::CommunityAssignment> cache_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Static UI bundle served at / when set.
  std::optional<std::filesystem::path> ui_dir;
};

class Server {
 public:
  explicit Server(std::shared_ptr<const Service> service);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; port 0 picks a free port. Throws Error if binding fails.
  int bind(const ServeOptions& options);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace constellation::service
