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

#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "hmp/environment.hpp"
#include "hmp/occupancy_model.hpp"
#include "hmp/path_metrics.hpp"

namespace hmp {

struct SamplingConfig {
  /// RRT* steering distance, meters.
  double step = 0.25;
  /// Sample budget (draws from the bounds, valid or not).
  int samples = 5000;
  std::uint64_t seed = 0;
  /// A point is free when its occupancy is at most p_safe.
  double p_safe = 0.5;
  /// Spacing of occupancy checks along an edge, meters.
  double edge_spacing = 0.05;
  /// RRT* only: probability of sampling the goal.
  double goal_bias = 0.05;
  Bounds bounds{Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(10.0, 10.0)};
};

/// Every check point along a->b (endpoints included, at most `spacing`
/// apart) has occupancy <= p_safe.
bool segment_free(const OccupancyModel& map, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                  double p_safe, double spacing);

/// RRT* with rewiring radius gamma (log n / n)^(1/2). Deterministic per seed.
/// Throws InfeasibleEndpoints for unsafe endpoints and PlanningFailure when
/// the goal is unreachable within the budget.
WaypointPath rrt_star_plan(const OccupancyModel& map, const Eigen::Vector2d& start,
                           const Eigen::Vector2d& goal, const SamplingConfig& config);

/// PRM* over `samples` draws with k = ceil(e (1 + 1/d) log n) nearest
/// neighbours; edges are collision-checked lazily during the shortest-path
/// search, which returns the same path as checking them all up front.
WaypointPath prm_star_plan(const OccupancyModel& map, const Eigen::Vector2d& start,
                           const Eigen::Vector2d& goal, const SamplingConfig& config);

/// Roadmap summary of the last PRM* call on this thread, for reproducibility checks.
struct RoadmapStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t edges_checked = 0;
};
RoadmapStats last_roadmap_stats();

}  // namespace hmp
