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

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "hmp/cost_field.hpp"
#include "hmp/occupancy_model.hpp"
#include "hmp/path_metrics.hpp"

namespace hmp {

/// Workspace cost and its gradient, from either a distance field or a map.
struct CostSource {
  std::function<double(const Eigen::Vector2d&)> cost;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> gradient;

  static CostSource from(const CostField& field);
  /// Occupancy probability as the cost.
  static CostSource from(const OccupancyModel& map);
};

struct FixedSupportConfig {
  /// Number of support points N, endpoints included.
  int support_size = 5;
  /// Regulariser: the step is (1 / beta) M^-1 grad U.
  double beta = 10.0;
  /// Metric over the N - 2 interior supports; empty means identity.
  Eigen::MatrixXd metric;
  double lambda = 0.05;
  int iterations = 500;
  /// Stop once no support moves more than this in an iteration.
  double tolerance = 1e-9;
};

/// Waypoints at fixed uniform times, joined piecewise-linearly.
struct FixedSupportPath {
  std::vector<double> times;
  std::vector<Eigen::Vector2d> supports;
  double beta = 0.0;
  Eigen::MatrixXd metric;
  int iterations_run = 0;
  /// Objective before the first and after every iteration.
  std::vector<double> objective_history;

  Eigen::Vector2d at(double t) const;
  WaypointPath as_waypoints() const { return {supports}; }
};

/// Objective seen by the fixed-support planner: cost summed over the supports
/// plus lambda/2 * sum |xi_{i+1} - xi_i|^2 / dt.
double fixed_support_objective(const CostSource& source, const std::vector<Eigen::Vector2d>& supports,
                               double lambda);

/**
 * Functional-gradient descent with a support fixed a priori:
 *   xi_{n+1} = xi_n - (1/beta) M^-1 grad U(xi_n)
 * evaluated only at the N support points. The cost between supports is never
 * sampled, which is exactly what lets it step over thin obstacles.
 * Throws NumericFailure if the iterate becomes non-finite.
 */
FixedSupportPath fixed_support_plan(const CostSource& source, const Eigen::Vector2d& start,
                                    const Eigen::Vector2d& goal, const FixedSupportConfig& config);

}  // namespace hmp
