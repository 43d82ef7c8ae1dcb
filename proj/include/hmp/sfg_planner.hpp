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
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hmp/gp_path.hpp"
#include "hmp/occupancy_model.hpp"
#include "hmp/robot_model.hpp"

namespace hmp {

struct PlannerConfig {
  /// Samples whose occupancy exceeds this are not used for updates.
  double p_safe = 0.5;
  /// Weight of the squared-velocity penalty.
  double lambda = 0.005;
  /// Step size eta_n = eta0 / (1 + n / decay_tau).
  double eta0 = 0.01;
  double decay_tau = 100.0;
  /// Configuration-space preconditioner A; empty means identity.
  Eigen::MatrixXd preconditioner;
  int minibatch_size = 32;
  int max_iterations = 500;
  int convergence_window = 50;
  double convergence_tolerance = 0.01;
  std::uint64_t seed = 0;
  TimeKernel kernel;
  /// Support observations closer than this in time replace each other.
  double dedup_tolerance = 0.05;
  /// Uniform t-grid used for the max-occupancy metric each iteration.
  int occupancy_grid = 200;
  /// Monte-Carlo samples for the per-iteration objective estimate.
  int objective_samples = 32;

  double step_size(int iteration) const { return eta0 / (1.0 + iteration / decay_tau); }
  void validate(int config_dim) const;
};

struct IterationRecord {
  int iteration = 0;
  double max_occupancy = 0.0;
  double objective = 0.0;
  int accepted = 0;
  int rejected = 0;
  /// |path(0) - start| and |path(1) - goal| after the iteration.
  double start_error = 0.0;
  double goal_error = 0.0;
};

/// One stochastic sample considered for an update.
struct UpdateRecord {
  int iteration = 0;
  double t = 0.0;
  double occupancy = 0.0;
  bool accepted = false;
};

enum class PlanStatus { kConverged, kStalledUnsafe };

std::string to_string(PlanStatus status);

struct PlanResult {
  GpPath path;
  std::vector<IterationRecord> trace;
  std::vector<UpdateRecord> updates;
  PlanStatus status = PlanStatus::kStalledUnsafe;
  double initial_max_occupancy = 0.0;
  double final_max_occupancy = 0.0;
  double path_length = 0.0;
  PlannerConfig config;
  std::uint64_t seed = 0;
};

struct MinibatchSample {
  double t = 0.0;
  std::size_t body_index = 0;
};

/// Times uniform on the open interval (0, 1), body points uniform over B.
std::vector<MinibatchSample> sample_minibatch(std::mt19937_64& rng, int size,
                                              const RobotModel& robot);

/// J(q, u)^T grad c(x(q, u)) with c the occupancy probability.
Eigen::VectorXd obstacle_gradient_at(const OccupancyModel& map, const RobotModel& robot,
                                     const Eigen::VectorXd& state, const Eigen::VectorXd& body);

/// Functional gradient of the squared-velocity penalty: -d^2 xi / dt^2.
Eigen::VectorXd dynamics_gradient_at(const GpPath& path, double t);

struct UpdateOutcome {
  bool accepted = false;
  double occupancy = 0.0;
  Eigen::VectorXd previous_state;
  Eigen::VectorXd new_state;
};

/// Computes the gated update at one sample without modifying the path.
UpdateOutcome propose_update(const GpPath& path, const MinibatchSample& sample,
                             const OccupancyModel& map, const RobotModel& robot, double eta,
                             const PlannerConfig& config);

/**
 * Safety-gated stochastic functional-gradient step at one sample:
 *   xi(t*) <- xi(t*) - eta A^-1 (J^T grad c + lambda (-xi''(t*)))
 * The new state is added to the path as a support observation. A sample whose
 * occupancy exceeds p_safe leaves the path untouched.
 */
UpdateOutcome stochastic_update(GpPath& path, const MinibatchSample& sample,
                                const OccupancyModel& map, const RobotModel& robot, double eta,
                                const PlannerConfig& config);

/**
 * Monte-Carlo estimate of the path objective: the sum over sample_count random
 * (t, u) of c(x(xi(t), u)) + lambda * 0.5 (|xi'(t)|^2 - |xi(1) - xi(0)|^2).
 * The velocity energy is measured against the straight line between the
 * endpoints, which only shifts the objective by a constant. Velocities use
 * central differences with h = 1e-3.
 */
double evaluate_objective(const GpPath& path, const OccupancyModel& map, const RobotModel& robot,
                          double lambda, int sample_count, std::mt19937_64& rng);

/// Maximum occupancy over a uniform grid of grid_size times crossed with all body points.
double max_occupancy_along(const GpPath& path, const OccupancyModel& map, const RobotModel& robot,
                           int grid_size);

/// True when the last `window` max-occupancy values span less than
/// `tolerance` and the latest is below p_safe, or when max_iterations
/// records exist.
bool check_convergence(const std::vector<IterationRecord>& trace, int window, double tolerance,
                       double p_safe, int max_iterations);

using IterationObserver = std::function<void(int iteration, const GpPath& path)>;

/**
 * Stochastic functional-gradient planning over a GP path. The prior mean is
 * `initial` when given, otherwise the straight line from start to goal.
 * The observer, if set, sees the path before the first iteration (as
 * iteration -1) and after each one.
 *
 * Throws InfeasibleEndpoints when start or goal occupancy exceeds p_safe and
 * NumericFailure when a gradient turns non-finite.
 */
PlanResult plan(const OccupancyModel& map, const RobotModel& robot, const Eigen::VectorXd& start,
                const Eigen::VectorXd& goal, const PlannerConfig& config,
                const std::optional<Curve>& initial = std::nullopt,
                const IterationObserver& observer = {});

}  // namespace hmp
