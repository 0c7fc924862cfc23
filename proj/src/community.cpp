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


#include "constellation/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "constellation/errors.hpp"

namespace constellation::community {

void WeightedGraph::add_edge(std::size_t u, std::size_t v, double w) {
  if (u == v) {
    self_loop[u] += 2.0 * w;
    return;
  }
  adjacency[u].push_back({v, w});
  adjacency[v].push_back({u, w});
}

double WeightedGraph::degree(std::size_t i) const noexcept {
  double k = self_loop[i];
  for (const auto& link : adjacency[i]) k += link.weight;
  return k;
}

double WeightedGraph::total_degree() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += degree(i);
  return total;
}

WeightedGraph to_weighted(const ThresholdedGraph& graph) {
  const auto& base = graph.base();
  WeightedGraph g(base.node_count());
  for (const auto& e : graph.edges()) g.add_edge(base.position(e.source), base.position(e.target), e.weight);
  return g;
}

double modularity(const WeightedGraph& graph, std::span<const std::size_t> membership) {
  const std::size_t n = graph.size();
  if (membership.size() != n) throw DomainError("membership does not cover every node");
  const double two_m = graph.total_degree();
  if (two_m <= 0.0) return 0.0;

  const std::size_t labels = n == 0 ? 0 : *std::max_element(membership.begin(), membership.end()) + 1;
  std::vector<double> inside(labels, 0.0);
  std::vector<double> total(labels, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = membership[i];
    total[c] += graph.degree(i);
    inside[c] += graph.self_loop[i];
    for (const auto& link : graph.adjacency[i]) {
      if (membership[link.target] == c) inside[c] += link.weight;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < labels; ++c) q += inside[c] - total[c] * total[c] / two_m;
  return q / two_m;
}

double modularity(const ThresholdedGraph& graph, std::span<const std::size_t> membership) {
  return modularity(to_weighted(graph), membership);
}

std::vector<std::size_t> canonicalize(std::span<const std::size_t> membership) {
  const std::size_t n = membership.size();
  if (n == 0) return {};
  const std::size_t labels = *std::max_element(membership.begin(), membership.end()) + 1;
  std::vector<std::size_t> size(labels, 0);
  std::vector<std::size_t> first(labels, n);
  for (std::size_t i = 0; i < n; ++i) {
    ++size[membership[i]];
    first[membership[i]] = std::min(first[membership[i]], i);
  }
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < labels; ++c) {
    if (size[c] > 0) order.push_back(c);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (size[a] != size[b]) return size[a] > size[b];
    return first[a] < first[b];
  });
  std::vector<std::size_t> relabel(labels, 0);
  for (std::size_t k = 0; k < order.size(); ++k) relabel[order[k]] = k;

  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = relabel[membership[i]];
  return out;
}

namespace {

// Local moves from the partition in `community` (labels < g.size()),
// updated in place; returns the number of moves made. Besides neighboring
// communities a node may also leave for an empty one. Q is appended to
// `trace` after every sweep.
std::size_t local_moves(const WeightedGraph& g, std::vector<std::size_t>& community, const LouvainOptions& options,
                        std::mt19937_64& rng, std::vector<double>& trace) {
  const std::size_t n = g.size();
  const double two_m = g.total_degree();

  std::vector<double> degree(n);
  std::vector<double> total(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = g.degree(i);
    total[community[i]] += degree[i];
    ++members[community[i]];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.shuffle) std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link_to(n, 0.0);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> touched;
  std::size_t moves = 0;

  for (;;) {
    std::size_t sweep_moves = 0;
    for (const std::size_t i : order) {
      const std::size_t own = community[i];
      const double k = degree[i];

      touched.assign(1, own);
      seen[own] = true;
      for (const auto& link : g.adjacency[i]) {
        const std::size_t c = community[link.target];
        if (!seen[c]) {
          seen[c] = true;
          touched.push_back(c);
        }
        link_to[c] += link.weight;
      }

      total[own] -= k;
      --members[own];
      const double stay = link_to[own] - total[own] * k / two_m;

      // An empty community has gain 0; offer the smallest free label unless
      // the node is already alone.
      if (members[own] > 0) {
        const auto free = std::find(members.begin(), members.end(), std::size_t{0});
        if (free != members.end()) {
          const auto c = static_cast<std::size_t>(free - members.begin());
          if (!seen[c]) {
            seen[c] = true;
            touched.push_back(c);
          }
        }
      }

      std::sort(touched.begin(), touched.end());
      std::size_t best = own;
      double best_gain = 0.0;
      bool have_candidate = false;
      for (const std::size_t c : touched) {
        if (c == own) continue;
        const double gain = link_to[c] - total[c] * k / two_m;
        if (!have_candidate || gain > best_gain) {
          best = c;
          best_gain = gain;
          have_candidate = true;
        }
      }
      if (!have_candidate || best_gain <= stay + options.min_gain) best = own;

      total[best] += k;
      ++members[best];
      if (best != own) {
        community[i] = best;
        ++sweep_moves;
      }
      for (const std::size_t c : touched) {
        link_to[c] = 0.0;
        seen[c] = false;
      }
    }
    moves += sweep_moves;
    trace.push_back(modularity(g, community));
    if (sweep_moves == 0) break;
  }
  return moves;
}

// Kernighan-Lin style refinement on `community`: every node is moved once,
// each step taking the best move among unlocked nodes even at a loss, and
// the best prefix of that sequence is kept. Returns true if Q improved.
bool refine(const WeightedGraph& g, std::vector<std::size_t>& community, double min_gain) {
  const std::size_t n = g.size();
  const double two_m = g.total_degree();

  std::vector<double> degree(n);
  std::vector<double> total(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = g.degree(i);
    total[community[i]] += degree[i];
    ++members[community[i]];
  }

  std::vector<double> link_to(n, 0.0);
  std::vector<std::size_t> touched;
  std::vector<bool> locked(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> history;  // (node, previous community)
  double running = 0.0;
  double best = 0.0;
  std::size_t best_len = 0;

  for (std::size_t step = 0; step < n; ++step) {
    bool found = false;
    std::size_t move_node = 0;
    std::size_t move_to = 0;
    double move_gain = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
      if (locked[i]) continue;
      const std::size_t own = community[i];
      const double k = degree[i];
      touched.clear();
      for (const auto& link : g.adjacency[i]) {
        const std::size_t c = community[link.target];
        if (link_to[c] == 0.0) touched.push_back(c);
        link_to[c] += link.weight;
      }
      const double stay = link_to[own] - (total[own] - k) * k / two_m;
      if (members[own] > 1) {
        const auto free = std::find(members.begin(), members.end(), std::size_t{0});
        if (free != members.end()) touched.push_back(static_cast<std::size_t>(free - members.begin()));
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (const std::size_t c : touched) {
        if (c == own) continue;
        const double gain = link_to[c] - total[c] * k / two_m - stay;
        if (!found || gain > move_gain) {
          found = true;
          move_node = i;
          move_to = c;
          move_gain = gain;
        }
      }
      for (const std::size_t c : touched) link_to[c] = 0.0;
      link_to[own] = 0.0;
    }
    if (!found) break;

    const std::size_t from = community[move_node];
    total[from] -= degree[move_node];
    --members[from];
    total[move_to] += degree[move_node];
    ++members[move_to];
    community[move_node] = move_to;
    locked[move_node] = true;
    history.emplace_back(move_node, from);
    running += move_gain;
    if (running > best + min_gain) {
      best = running;
      best_len = history.size();
    }
  }

  while (history.size() > best_len) {
    community[history.back().first] = history.back().second;
    history.pop_back();
  }
  return best_len > 0;
}

// Collapses every community into one node. Returns the condensed graph and
// fills `dense` with the community -> condensed node mapping.
WeightedGraph condense(const WeightedGraph& g, const std::vector<std::size_t>& community,
                       std::vector<std::size_t>& dense) {
  const std::size_t n = g.size();
  dense.assign(n, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (dense[community[i]] == n) dense[community[i]] = next++;
  }

  WeightedGraph out(next);
  std::vector<std::vector<double>> between(next, std::vector<double>(next, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ci = dense[community[i]];
    out.self_loop[ci] += g.self_loop[i];
    for (const auto& link : g.adjacency[i]) {
      const std::size_t cj = dense[community[link.target]];
      if (ci == cj) {
        out.self_loop[ci] += link.weight;
      } else {
        between[ci][cj] += link.weight;
      }
    }
  }
  for (std::size_t a = 0; a < next; ++a) {
    for (std::size_t b = 0; b < next; ++b) {
      if (a != b && between[a][b] != 0.0) out.adjacency[a].push_back({b, between[a][b]});
    }
  }
  return out;
}

// Node moves then a Kernighan-Lin pass on the original graph, repeated until
// neither improves Q.
void polish(const WeightedGraph& graph, std::vector<std::size_t>& assignment, const LouvainOptions& options,
            std::mt19937_64& rng, std::vector<double>& trace, bool with_refine = true) {
  for (;;) {
    if (local_moves(graph, assignment, options, rng, trace) > 0) continue;
    if (!with_refine || !refine(graph, assignment, options.min_gain)) return;
    trace.push_back(modularity(graph, assignment));
  }
}

// Perturbs a locally optimal partition and polishes the result; the first
// trial that beats the current Q is adopted. Trials are, in order, every
// pairwise community merge and every forced move of one node into another
// (or a fresh) community. Returns true if a trial was adopted.
bool perturb(const WeightedGraph& graph, std::vector<std::size_t>& assignment,
                        const LouvainOptions& options, std::mt19937_64& rng) {
  const double current = modularity(graph, assignment);
  std::vector<std::size_t> labels(assignment);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  std::vector<double> scratch;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      std::vector<std::size_t> trial(assignment);
      for (auto& c : trial) {
        if (c == labels[b]) c = labels[a];
      }
      scratch.clear();
      polish(graph, trial, options, rng, scratch, false);
      if (modularity(graph, trial) > current + options.min_gain) {
        assignment = std::move(trial);
        return true;
      }
    }
  }

  const std::size_t n = assignment.size();
  std::vector<bool> used(n, false);
  for (const std::size_t c : labels) used[c] = true;
  const auto fresh = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t <= labels.size(); ++t) {
      const std::size_t c = t < labels.size() ? labels[t] : fresh;
      if (c == assignment[i] || c == n) continue;
      std::vector<std::size_t> trial(assignment);
      trial[i] = c;
      scratch.clear();
      polish(graph, trial, options, rng, scratch, false);
      if (modularity(graph, trial) > current + options.min_gain) {
        assignment = std::move(trial);
        return true;
      }
    }
  }
  return false;
}

LouvainResult single_pass(const WeightedGraph& graph, const LouvainOptions& options, std::mt19937_64& rng) {
  const std::size_t n = graph.size();
  LouvainResult result;
  std::vector<std::size_t> assignment(n);
  std::iota(assignment.begin(), assignment.end(), std::size_t{0});
  result.trace.push_back(modularity(graph, assignment));

  // Coarsen while local moves make progress. Once the top level is stable the
  // partition is polished on the original graph, and finally perturbed; any
  // improvement restarts coarsening from the improved partition.
  for (;;) {
    std::vector<std::size_t> dense;
    const WeightedGraph level = condense(graph, assignment, dense);
    for (auto& a : assignment) a = dense[a];

    std::vector<std::size_t> community(level.size());
    std::iota(community.begin(), community.end(), std::size_t{0});
    if (local_moves(level, community, options, rng, result.trace) > 0) {
      ++result.levels;
      for (auto& a : assignment) a = community[a];
      continue;
    }
    const double before = modularity(graph, assignment);
    polish(graph, assignment, options, rng, result.trace);
    if (modularity(graph, assignment) > before + options.min_gain) continue;
    if (!perturb(graph, assignment, options, rng)) break;
    result.trace.push_back(modularity(graph, assignment));
  }

  result.membership = canonicalize(assignment);
  result.modularity = modularity(graph, result.membership);
  return result;
}

}  // namespace

LouvainResult louvain(const WeightedGraph& graph, const LouvainOptions& options) {
  if (graph.total_degree() <= 0.0) {
    std::vector<std::size_t> singletons(graph.size());
    std::iota(singletons.begin(), singletons.end(), std::size_t{0});
    LouvainResult result;
    result.membership = std::move(singletons);
    result.trace.push_back(0.0);
    return result;
  }

  std::mt19937_64 rng(options.seed);
  LouvainResult best = single_pass(graph, options, rng);
  LouvainOptions shuffled = options;
  shuffled.shuffle = true;
  for (std::size_t pass = 1; pass <= options.restarts; ++pass) {
    auto candidate = single_pass(graph, shuffled, rng);
    if (candidate.modularity > best.modularity + 1e-12) {
      candidate.pass = pass;
      best = std::move(candidate);
    }
  }
  return best;
}

CommunityAssignment detect(const ThresholdedGraph& graph, const LouvainOptions& options) {
  const auto result = louvain(to_weighted(graph), options);
  CommunityAssignment out;
  out.threshold = graph.threshold();
  out.membership = result.membership;
  out.modularity = result.modularity;
  for (const std::size_t c : out.membership) {
    if (c >= out.sizes.size()) out.sizes.resize(c + 1, 0);
    ++out.sizes[c];
  }
  return out;
}

CommunityAssignment detect(const ThresholdedGraph& graph, std::uint64_t seed) {
  LouvainOptions options;
  options.seed = seed;
  return detect(graph, options);
}

}  // namespace constellation::community
