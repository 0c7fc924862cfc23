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


#include "constellation/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <csignal>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "constellation/cograph.hpp"
#include "constellation/community.hpp"
#include "constellation/ego.hpp"
#include "constellation/errors.hpp"
#include "constellation/graph_io.hpp"
#include "constellation/ingest.hpp"
#include "constellation/service.hpp"

namespace constellation::cli {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string stats_line(const GraphStats& s) {
  std::ostringstream os;
  os << "nodes=" << s.nodes << " edges=" << s.edges << " avg_degree=" << std::fixed << std::setprecision(2)
     << s.average_degree;
  return os.str();
}

// Resolves a focus given as an exact category name or a numeric id.
std::optional<CategoryId> resolve_focus(const ConstellationGraph& graph, const std::string& focus) {
  for (const auto& n : graph.nodes()) {
    if (n.name == focus) return n.id;
  }
  CategoryId id = 0;
  const char* end = focus.data() + focus.size();
  const auto [ptr, ec] = std::from_chars(focus.data(), end, id);
  if (ec == std::errc() && ptr == end && graph.find(id)) return id;
  return std::nullopt;
}

std::atomic<service::Server*> g_running_server{nullptr};

extern "C" void on_interrupt(int) {
  if (auto* server = g_running_server.load()) server->stop();
}

struct BuildArgs {
  std::vector<std::string> annotations;
  std::string out;
  bool exclude_crowd = false;
  std::optional<double> threshold;
};

struct EgoArgs {
  std::string graph;
  std::string focus;
  double threshold = 0.0;
  double decay = 0.8;
  double fire = 0.05;
  std::optional<std::size_t> max_depth;
};

struct CommunityArgs {
  std::string graph;
  double threshold = 0.0;
  bool json = false;
};

struct StatsArgs {
  std::string graph;
  std::optional<double> threshold;
};

struct ServeArgs {
  std::string graph;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string ui;
};

int cmd_build(const BuildArgs& args, std::ostream& out) {
  AnnotationDataset dataset;
  for (const auto& path : args.annotations) dataset = merge_datasets(dataset, load_annotations(path));

  IndexOptions options;
  options.include_crowd = !args.exclude_crowd;
  const auto graph = build_graph(build_index(dataset, options));
  io::save_graph(graph, args.out);

  out << stats_line(stats(graph)) << "\n";
  out << "images=" << dataset.images.size() << " annotations=" << dataset.annotations.size()
      << " categories=" << dataset.categories.size() << " crowd=" << (options.include_crowd ? "included" : "excluded")
      << "\n";
  if (args.threshold) {
    out << "threshold=" << *args.threshold << " " << stats_line(stats(filter(graph, *args.threshold))) << "\n";
  }
  return kOk;
}

int cmd_ego(const EgoArgs& args, std::ostream& out, std::ostream& err) {
  const auto graph = io::load_graph(args.graph);
  const auto focus = resolve_focus(graph, args.focus);
  if (!focus) {
    std::vector<std::string> names;
    for (const auto& n : graph.nodes()) names.push_back(n.name);
    err << "error: unknown focus \"" << args.focus << "\"";
    const auto suggestions = near_matches(args.focus, names);
    if (!suggestions.empty()) {
      err << "; did you mean:";
      for (std::size_t i = 0; i < suggestions.size(); ++i) err << (i ? ", " : " ") << "\"" << suggestions[i] << "\"";
    }
    err << "\n";
    return kDataError;
  }
  ego::EgoParams params;
  params.decay = args.decay;
  params.fire_threshold = args.fire;
  if (args.max_depth) params.max_depth = *args.max_depth;
  const auto tree = ego::expand(filter(graph, args.threshold), *focus, params);
  out << io::dump(io::to_json(tree, args.threshold));
  return kOk;
}

int cmd_communities(const CommunityArgs& args, std::ostream& out) {
  const auto graph = io::load_graph(args.graph);
  const auto assignment = community::detect(filter(graph, args.threshold));
  if (args.json) {
    out << io::dump(io::to_json(assignment));
    return kOk;
  }
  out << "threshold=" << args.threshold << " communities=" << assignment.count() << " modularity=" << std::fixed
      << std::setprecision(6) << assignment.modularity << "\n";
  for (std::size_t c = 0; c < assignment.count(); ++c) {
    out << c << " (" << assignment.sizes[c] << "):";
    bool first = true;
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
      if (assignment.membership[i] != c) continue;
      out << (first ? " " : ", ") << graph.nodes()[i].name;
      first = false;
    }
    out << "\n";
  }
  return kOk;
}

int cmd_stats(const StatsArgs& args, std::ostream& out) {
  const auto graph = io::load_graph(args.graph);
  const GraphStats s = args.threshold ? stats(filter(graph, *args.threshold)) : stats(graph);
  out << stats_line(s) << "\n";
  out << "weight_min=" << s.weight_min << " weight_max=" << s.weight_max << " weight_mean=" << s.weight_mean << "\n";
  return kOk;
}

int cmd_serve(const ServeArgs& args, std::ostream& out) {
  auto svc = std::make_shared<const service::Service>(io::load_graph(args.graph));
  service::Server server(svc);
  service::ServeOptions options;
  options.host = args.host;
  options.port = args.port;
  if (!args.ui.empty()) options.ui_dir = args.ui;
  const int port = server.bind(options);
  out << "serving " << args.graph << " on http://" << args.host << ":" << port << "\n" << std::flush;

  g_running_server.store(&server);
  auto previous_int = std::signal(SIGINT, on_interrupt);
  auto previous_term = std::signal(SIGTERM, on_interrupt);
  server.listen();
  std::signal(SIGINT, previous_int);
  std::signal(SIGTERM, previous_term);
  g_running_server.store(nullptr);
  return kOk;
}

}  // namespace

std::vector<std::string> near_matches(const std::string& query, const std::vector<std::string>& names,
                                      std::size_t limit) {
  const std::string q = lower(query);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& name : names) {
    const std::string n = lower(name);
    std::size_t d = edit_distance(q, n);
    if (!q.empty() && n.find(q) != std::string::npos) d = std::min<std::size_t>(d, 1);
    scored.emplace_back(d, name);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  const std::size_t cutoff = std::max<std::size_t>(2, q.size() / 2);
  for (const auto& [d, name] : scored) {
    if (out.size() == limit || d > cutoff) break;
    out.push_back(name);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Object co-occurrence constellation: build, query and serve", "constellation"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build the co-occurrence graph from COCO annotation files");
  build_cmd->add_option("--annotations", build.annotations, "COCO instances JSON (repeatable)")
      ->required();
  build_cmd->add_option("--out", build.out, "Output graph document")->required();
  auto* include = build_cmd->add_flag("--include-crowd", "Count iscrowd annotations (default)");
  auto* exclude = build_cmd->add_flag("--exclude-crowd", build.exclude_crowd, "Ignore iscrowd annotations");
  include->excludes(exclude);
  build_cmd->add_option("--threshold", build.threshold, "Also report the edge count at this threshold")
      ->check(CLI::Range(0.0, kMaxThreshold));

  EgoArgs ego_args;
  auto* ego_cmd = app.add_subcommand("ego", "Spreading-activation ego tree around one category");
  ego_cmd->add_option("--graph", ego_args.graph, "Graph document")->required();
  ego_cmd->add_option("--focus", ego_args.focus, "Category name or id")->required();
  ego_cmd->add_option("--threshold", ego_args.threshold, "Edge threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, kMaxThreshold));
  ego_cmd->add_option("--decay", ego_args.decay, "Decay factor")->capture_default_str();
  ego_cmd->add_option("--fire", ego_args.fire, "Firing threshold")->capture_default_str();
  ego_cmd->add_option("--max-depth", ego_args.max_depth, "Maximum ring depth");

  CommunityArgs community_args;
  auto* community_cmd = app.add_subcommand("communities", "Louvain communities at a threshold");
  community_cmd->add_option("--graph", community_args.graph, "Graph document")->required();
  community_cmd->add_option("--threshold", community_args.threshold, "Edge threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, kMaxThreshold));
  community_cmd->add_flag("--json", community_args.json, "Print the assignment document");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Node/edge counts and weight summary");
  stats_cmd->add_option("--graph", stats_args.graph, "Graph document")->required();
  stats_cmd->add_option("--threshold", stats_args.threshold, "Edge threshold")->check(CLI::Range(0.0, kMaxThreshold));

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the read-only HTTP API");
  serve_cmd->add_option("--graph", serve_args.graph, "Graph document")->required();
  serve_cmd->add_option("--port", serve_args.port, "TCP port (0 = any free port)")
      ->capture_default_str()
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", serve_args.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--ui", serve_args.ui, "Static UI bundle served at /")->check(CLI::ExistingDirectory);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*build_cmd) return cmd_build(build, out);
    if (*ego_cmd) return cmd_ego(ego_args, out, err);
    if (*community_cmd) return cmd_communities(community_args, out);
    if (*stats_cmd) return cmd_stats(stats_args, out);
    if (*serve_cmd) return cmd_serve(serve_args, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace constellation::cli
