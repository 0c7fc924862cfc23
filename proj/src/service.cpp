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


#include "constellation/service.hpp"

#include <charconv>
#include <mutex>

#include "constellation/ego.hpp"
#include "constellation/errors.hpp"
#include "constellation/graph_io.hpp"
#include "httplib.h"

namespace constellation::service {
namespace {

using io::Json;

Response json_response(const Json& doc, int status = 200) { return Response{status, io::dump(doc)}; }

Response error_response(int status, const std::string& message) {
  return json_response(Json{{"error", message}}, status);
}

std::optional<double> parse_real(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::optional<CategoryId> parse_id(const std::string& text) {
  CategoryId value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

// Reads an optional real query parameter; throws DomainError on garbage.
double real_param(const Query& query, const std::string& key, double fallback) {
  const auto it = query.find(key);
  if (it == query.end()) return fallback;
  const auto value = parse_real(it->second);
  if (!value) throw DomainError("query parameter " + key + "=\"" + it->second + "\" is not a number");
  return *value;
}

}  // namespace

Service::Service(ConstellationGraph graph) : graph_(std::move(graph)) {
  for (const auto& n : graph_.nodes()) by_name_.emplace(n.name, n.id);
}

std::size_t Service::cached_assignments() const {
  std::shared_lock lock(cache_mutex_);
  return cache_.size();
}

Response Service::handle(const std::string& path, const Query& query) const {
  try {
    if (path == "/api/categories") return categories();
    if (path == "/api/graph") return graph_view(query);
    if (path == "/api/stats") return stats_view();
    constexpr std::string_view ego_prefix = "/api/ego/";
    if (path.starts_with(ego_prefix)) return ego_view(path.substr(ego_prefix.size()), query);
    return error_response(404, "no such endpoint: " + path);
  } catch (const DomainError& e) {
    return error_response(400, e.what());
  } catch (const LookupError& e) {
    return error_response(404, e.what());
  } catch (const Error& e) {
    return error_response(500, e.what());
  }
}

Response Service::categories() const {
  Json list = Json::array();
  for (const auto& n : graph_.nodes()) {
    list.push_back({{"id", n.id}, {"name", n.name}, {"supercategory", n.supercategory}});
  }
  return json_response(list);
}

community::CommunityAssignment Service::communities(const ThresholdedGraph& view) const {
  const std::size_t key = view.edges().size();
  {
    std::shared_lock lock(cache_mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) {
      auto hit = it->second;
      hit.threshold = view.threshold();
      return hit;
    }
  }
  auto fresh = community::detect(view);
  {
    std::unique_lock lock(cache_mutex_);
    cache_.insert_or_assign(key, fresh);
  }
  return fresh;
}

Response Service::graph_view(const Query& query) const {
  const double threshold = real_param(query, "threshold", 0.0);
  const auto view = filter(graph_, threshold);
  Json doc = io::to_json(view);
  doc["communities"] = io::to_json(communities(view));
  return json_response(doc);
}

Response Service::ego_view(const std::string& id_text, const Query& query) const {
  const auto id = parse_id(id_text);
  if (!id) return error_response(404, "unknown category id \"" + id_text + "\"");
  if (!graph_.find(*id)) return error_response(404, "unknown category id " + id_text);

  const double threshold = real_param(query, "threshold", 0.0);
  ego::EgoParams params;
  params.decay = real_param(query, "decay", params.decay);
  params.fire_threshold = real_param(query, "fire", params.fire_threshold);
  const auto view = filter(graph_, threshold);
  return json_response(io::to_json(ego::expand(view, *id, params), threshold));
}

Response Service::stats_view() const { return json_response(io::to_json(stats(graph_))); }

struct Server::Impl {
  std::shared_ptr<const Service> service;
  httplib::Server http;
};

Server::Server(std::shared_ptr<const Service> service) : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  impl_->http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  impl_->http.Get(R"(/api/.*)", [svc = impl_->service](const httplib::Request& req, httplib::Response& res) {
    Query query;
    for (const auto& [key, value] : req.params) query.emplace(key, value);
    const Response r = svc->handle(req.path, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  impl_->http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

Server::~Server() { stop(); }

int Server::bind(const ServeOptions& options) {
  if (options.port < 0 || options.port > 65535) {
    throw DomainError("port " + std::to_string(options.port) + " outside 0..65535");
  }
  if (options.ui_dir) {
    if (!impl_->http.set_mount_point("/", options.ui_dir->string())) {
      throw Error("UI directory " + options.ui_dir->string() + " does not exist");
    }
  }
  if (options.port == 0) {
    const int port = impl_->http.bind_to_any_port(options.host);
    if (port < 0) throw Error("cannot bind " + options.host);
    return port;
  }
  if (!impl_->http.bind_to_port(options.host, options.port)) {
    throw Error("cannot bind " + options.host + ":" + std::to_string(options.port));
  }
  return options.port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

}  // namespace constellation::service
