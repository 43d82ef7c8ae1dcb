/*
 * Copyright 2026 The hmp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hmp/sampling_planners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

thread_local RoadmapStats g_roadmap_stats;

void validate(const SamplingConfig& c) {
  if (!(c.step > 0.0)) throw std::invalid_argument("sampling planner: step must be > 0");
  if (c.samples < 1) throw std::invalid_argument("sampling planner: samples must be >= 1");
  if (!(c.p_safe > 0.0 && c.p_safe < 1.0)) throw std::invalid_argument("sampling planner: p_safe");
  if (!(c.edge_spacing > 0.0)) throw std::invalid_argument("sampling planner: edge spacing");
  if (!c.bounds.valid()) throw std::invalid_argument("sampling planner: invalid bounds");
}

void check_endpoints(const OccupancyModel& map, const Eigen::Vector2d& start,
                     const Eigen::Vector2d& goal, double p_safe) {
  if (map.dim() != 2) throw std::invalid_argument("sampling planner: map must be 2-d");
  const double ps = map.predict(start);
  const double pg = map.predict(goal);
  if (ps > p_safe || pg > p_safe) {
    throw InfeasibleEndpoints("sampling planner: endpoint occupancy (start " + std::to_string(ps) +
                              ", goal " + std::to_string(pg) + ") exceeds p_safe");
  }
}

Eigen::Vector2d uniform_point(std::mt19937_64& rng, const Bounds& b) {
  std::uniform_real_distribution<double> ux(b.min.x(), b.max.x());
  std::uniform_real_distribution<double> uy(b.min.y(), b.max.y());
  const double x = ux(rng);
  return {x, uy(rng)};
}

// gamma_RRT* > 2 (1 + 1/d)^(1/d) (mu(X_free) / zeta_d)^(1/d), d = 2.
double rewiring_gamma(const Bounds& b) {
  return 2.0 * std::sqrt(1.5) * std::sqrt(b.area() / M_PI) * 1.01;
}

struct TreeNode {
  Eigen::Vector2d position;
  int parent = -1;
  double cost = 0.0;
  std::vector<int> children;
};

void propagate_cost(std::vector<TreeNode>& nodes, int root) {
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    for (int c : nodes[static_cast<std::size_t>(n)].children) {
      auto& child = nodes[static_cast<std::size_t>(c)];
      child.cost = nodes[static_cast<std::size_t>(n)].cost +
                   (child.position - nodes[static_cast<std::size_t>(n)].position).norm();
      stack.push_back(c);
    }
  }
}

void reparent(std::vector<TreeNode>& nodes, int node, int new_parent) {
  auto& n = nodes[static_cast<std::size_t>(node)];
  if (n.parent >= 0) {
    auto& siblings = nodes[static_cast<std::size_t>(n.parent)].children;
    siblings.erase(std::remove(siblings.begin(), siblings.end(), node), siblings.end());
  }
  n.parent = new_parent;
  nodes[static_cast<std::size_t>(new_parent)].children.push_back(node);
  n.cost = nodes[static_cast<std::size_t>(new_parent)].cost +
           (n.position - nodes[static_cast<std::size_t>(new_parent)].position).norm();
  propagate_cost(nodes, node);
}

WaypointPath backtrack(const std::vector<TreeNode>& nodes, int last, const Eigen::Vector2d& goal) {
  WaypointPath path;
  path.waypoints.push_back(goal);
  for (int n = last; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent) {
    path.waypoints.push_back(nodes[static_cast<std::size_t>(n)].position);
  }
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  return path;
}

}  // namespace

bool segment_free(const OccupancyModel& map, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                  double p_safe, double spacing) {
  const int steps = std::max(1, static_cast<int>(std::ceil((b - a).norm() / spacing)));
  for (int k = 0; k <= steps; ++k) {
    const Eigen::Vector2d p = a + (static_cast<double>(k) / steps) * (b - a);
    if (map.predict(p) > p_safe) return false;
  }
  return true;
}

WaypointPath rrt_star_plan(const OccupancyModel& map, const Eigen::Vector2d& start,
                           const Eigen::Vector2d& goal, const SamplingConfig& config) {
  validate(config);
  check_endpoints(map, start, goal, config.p_safe);
  if (start == goal) return WaypointPath{{start, goal}};

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double gamma = rewiring_gamma(config.bounds);
  auto free = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return segment_free(map, a, b, config.p_safe, config.edge_spacing);
  };

  std::vector<TreeNode> nodes;
  nodes.push_back({start, -1, 0.0, {}});
  std::vector<int> near;

  for (int i = 0; i < config.samples; ++i) {
    const Eigen::Vector2d target = unit(rng) < config.goal_bias ? goal : uniform_point(rng, config.bounds);

    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double d = (nodes[k].position - target).squaredNorm();
      if (d < best) {
        best = d;
        nearest = static_cast<int>(k);
      }
    }
    const Eigen::Vector2d& from = nodes[static_cast<std::size_t>(nearest)].position;
    const double dist = std::sqrt(best);
    if (dist == 0.0) continue;
    const Eigen::Vector2d candidate = dist > config.step ? Eigen::Vector2d(from + (config.step / dist) * (target - from))
                                                         : target;
    if (!free(from, candidate)) continue;

    const double n = static_cast<double>(nodes.size() + 1);
    const double radius = gamma * std::sqrt(std::log(n) / n);
    near.clear();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if ((nodes[k].position - candidate).norm() <= radius) near.push_back(static_cast<int>(k));
    }

    // Choose the cheapest collision-free parent, checking in cost order.
    std::vector<std::pair<double, int>> options;
    options.emplace_back(nodes[static_cast<std::size_t>(nearest)].cost + (candidate - from).norm(), nearest);
    for (int k : near) {
      if (k == nearest) continue;
      const auto& q = nodes[static_cast<std::size_t>(k)];
      options.emplace_back(q.cost + (q.position - candidate).norm(), k);
    }
    std::sort(options.begin(), options.end());
    int parent = -1;
    double cost = 0.0;
    for (const auto& [c, k] : options) {
      if (k == nearest || free(nodes[static_cast<std::size_t>(k)].position, candidate)) {
        parent = k;
        cost = c;
        break;
      }
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({candidate, parent, cost, {}});
    nodes[static_cast<std::size_t>(parent)].children.push_back(id);

    for (int k : near) {
      if (k == parent) continue;
      auto& q = nodes[static_cast<std::size_t>(k)];
      const double via = cost + (q.position - candidate).norm();
      if (via < q.cost && free(candidate, q.position)) reparent(nodes, k, id);
    }
  }

  const double n = static_cast<double>(nodes.size());
  const double goal_radius = std::max(config.step, gamma * std::sqrt(std::log(n) / n));
  int best_node = -1;
  std::vector<std::pair<double, int>> finals;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double d = (nodes[k].position - goal).norm();
    if (d <= goal_radius) finals.emplace_back(nodes[k].cost + d, static_cast<int>(k));
  }
  std::sort(finals.begin(), finals.end());
  for (const auto& [unused, k] : finals) {
    if (free(nodes[static_cast<std::size_t>(k)].position, goal)) {
      best_node = k;
      break;
    }
  }
  if (best_node < 0) {
    throw PlanningFailure("rrt*: goal not reached within " + std::to_string(config.samples) +
                          " samples");
  }
  WaypointPath path = backtrack(nodes, best_node, goal);
  if (path.waypoints.size() >= 2 && path.waypoints[path.waypoints.size() - 2] == goal) {
    path.waypoints.pop_back();
  }
  return path;
}

WaypointPath prm_star_plan(const OccupancyModel& map, const Eigen::Vector2d& start,
                           const Eigen::Vector2d& goal, const SamplingConfig& config) {
  validate(config);
  check_endpoints(map, start, goal, config.p_safe);
  g_roadmap_stats = {};
  if (start == goal) return WaypointPath{{start, goal}};

  std::mt19937_64 rng(config.seed);
  std::vector<Eigen::Vector2d> nodes{start, goal};
  for (int i = 0; i < config.samples; ++i) {
    const Eigen::Vector2d p = uniform_point(rng, config.bounds);
    if (map.predict(p) <= config.p_safe) nodes.push_back(p);
  }
  const std::size_t n = nodes.size();
  const auto k = static_cast<std::size_t>(
      std::ceil(M_E * 1.5 * std::log(static_cast<double>(n))));

  // Symmetric k-nearest-neighbour graph.
  std::vector<std::vector<std::size_t>> adjacency(n);
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = {(nodes[j] - nodes[i]).squaredNorm(), j};
    const std::size_t kk = std::min(k + 1, n);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
    for (std::size_t r = 0; r < kk; ++r) {
      const std::size_t j = dist[r].second;
      if (j == i) continue;
      adjacency[i].push_back(j);
      adjacency[j].push_back(i);
    }
  }
  std::size_t edge_count = 0;
  for (auto& adj : adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    edge_count += adj.size();
  }
  g_roadmap_stats.nodes = n;
  g_roadmap_stats.edges = edge_count / 2;

  enum class EdgeState : char { kUnknown, kFree, kBlocked };
  std::unordered_map<std::uint64_t, EdgeState> edge_state;
  auto key = [n](std::size_t a, std::size_t b) {
    return static_cast<std::uint64_t>(std::min(a, b)) * n + std::max(a, b);
  };

  while (true) {
    // A* from start (0) to goal (1), skipping edges known to be blocked.
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(n, n);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    g[0] = 0.0;
    open.emplace((nodes[0] - nodes[1]).norm(), 0);
    while (!open.empty()) {
      const auto [f, u] = open.top();
      open.pop();
      if (u == 1) break;
      if (f > g[u] + (nodes[u] - nodes[1]).norm() + 1e-12) continue;
      for (std::size_t v : adjacency[u]) {
        const auto it = edge_state.find(key(u, v));
        if (it != edge_state.end() && it->second == EdgeState::kBlocked) continue;
        const double cand = g[u] + (nodes[v] - nodes[u]).norm();
        if (cand < g[v]) {
          g[v] = cand;
          parent[v] = u;
          open.emplace(cand + (nodes[v] - nodes[1]).norm(), v);
        }
      }
    }
    if (!std::isfinite(g[1])) {
      throw PlanningFailure("prm*: start and goal are not connected in the roadmap of " +
                            std::to_string(n) + " nodes");
    }

    std::vector<std::size_t> chain{1};
    while (chain.back() != 0) chain.push_back(parent[chain.back()]);
    std::reverse(chain.begin(), chain.end());

    bool all_free = true;
    for (std::size_t i = 1; i < chain.size(); ++i) {
      auto& state = edge_state[key(chain[i - 1], chain[i])];
      if (state == EdgeState::kUnknown) {
        ++g_roadmap_stats.edges_checked;
        state = segment_free(map, nodes[chain[i - 1]], nodes[chain[i]], config.p_safe,
                             config.edge_spacing)
                    ? EdgeState::kFree
                    : EdgeState::kBlocked;
      }
      all_free = all_free && state == EdgeState::kFree;
    }
    if (all_free) {
      WaypointPath path;
      for (std::size_t id : chain) path.waypoints.push_back(nodes[id]);
      return path;
    }
  }
}

RoadmapStats last_roadmap_stats() { return g_roadmap_stats; }

}  // namespace hmp
