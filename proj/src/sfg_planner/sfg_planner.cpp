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

#include "hmp/sfg_planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "hmp/errors.hpp"

namespace hmp {

std::string to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::kConverged:
      return "converged";
    case PlanStatus::kStalledUnsafe:
      return "stalled-unsafe";
  }
  return "unknown";
}

void PlannerConfig::validate(int config_dim) const {
  if (!(p_safe > 0.0 && p_safe < 1.0)) throw std::invalid_argument("planner: p_safe must be in (0,1)");
  if (!(lambda >= 0.0)) throw std::invalid_argument("planner: lambda must be >= 0");
  if (!(eta0 > 0.0) || !(decay_tau > 0.0)) {
    throw std::invalid_argument("planner: step size schedule must stay positive");
  }
  if (minibatch_size < 1) throw std::invalid_argument("planner: minibatch_size must be >= 1");
  if (max_iterations < 0) throw std::invalid_argument("planner: max_iterations must be >= 0");
  if (convergence_window < 2) throw std::invalid_argument("planner: convergence window must be >= 2");
  if (occupancy_grid < 2) throw std::invalid_argument("planner: occupancy_grid must be >= 2");
  if (objective_samples < 1) throw std::invalid_argument("planner: objective_samples must be >= 1");
  kernel.validate();
  if (!(dedup_tolerance >= 0.0 && dedup_tolerance < 0.5)) {
    throw std::invalid_argument("planner: dedup_tolerance must be in [0, 0.5)");
  }
  if (preconditioner.size() != 0) {
    if (preconditioner.rows() != config_dim || preconditioner.cols() != config_dim) {
      throw std::invalid_argument("planner: preconditioner must be config_dim x config_dim");
    }
    if (!preconditioner.isApprox(preconditioner.transpose()) ||
        Eigen::LLT<Eigen::MatrixXd>(preconditioner).info() != Eigen::Success) {
      throw std::invalid_argument("planner: preconditioner must be positive definite");
    }
  }
}

std::vector<MinibatchSample> sample_minibatch(std::mt19937_64& rng, int size,
                                              const RobotModel& robot) {
  if (size < 1) throw std::invalid_argument("sample_minibatch: size must be >= 1");
  if (robot.body_points.empty()) throw std::invalid_argument("sample_minibatch: no body points");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> body(0, robot.body_points.size() - 1);
  std::vector<MinibatchSample> batch;
  batch.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    double t = unit(rng);
    while (t <= 0.0) t = unit(rng);  // uniform_real_distribution already excludes 1
    batch.push_back({t, body(rng)});
  }
  return batch;
}

Eigen::VectorXd obstacle_gradient_at(const OccupancyModel& map, const RobotModel& robot,
                                     const Eigen::VectorXd& state, const Eigen::VectorXd& body) {
  const Eigen::VectorXd x = robot.forward_kinematics(state, body);
  return robot.jacobian(state, body).transpose() * map.gradient(x);
}

Eigen::VectorXd dynamics_gradient_at(const GpPath& path, double t) {
  return -path.second_time_derivative(t);
}

UpdateOutcome propose_update(const GpPath& path, const MinibatchSample& sample,
                             const OccupancyModel& map, const RobotModel& robot, double eta,
                             const PlannerConfig& config) {
  if (!(eta > 0.0)) throw std::invalid_argument("stochastic_update: step must be positive");
  if (sample.body_index >= robot.body_points.size()) {
    throw std::invalid_argument("stochastic_update: body index out of range");
  }
  const Eigen::VectorXd& body = robot.body_points[sample.body_index];
  UpdateOutcome out;
  out.previous_state = path.query(sample.t);
  out.new_state = out.previous_state;
  out.occupancy = map.predict(robot.forward_kinematics(out.previous_state, body));
  if (out.occupancy > config.p_safe) return out;

  Eigen::VectorXd grad = obstacle_gradient_at(map, robot, out.previous_state, body);
  if (config.lambda != 0.0) grad += config.lambda * dynamics_gradient_at(path, sample.t);
  if (config.preconditioner.size() != 0) grad = config.preconditioner.llt().solve(grad);
  if (!grad.allFinite()) {
    throw NumericFailure("stochastic_update: non-finite gradient at t = " +
                         std::to_string(sample.t));
  }
  out.new_state = out.previous_state - eta * grad;
  out.accepted = true;
  return out;
}

UpdateOutcome stochastic_update(GpPath& path, const MinibatchSample& sample,
                                const OccupancyModel& map, const RobotModel& robot, double eta,
                                const PlannerConfig& config) {
  UpdateOutcome out = propose_update(path, sample, map, robot, eta, config);
  if (out.accepted) path.add_observation(sample.t, out.new_state, ObservationKind::kSupport);
  return out;
}

namespace {

constexpr double kVelocityStep = 1e-3;

Eigen::VectorXd fd_velocity(const GpPath& path, double t) {
  const double h = kVelocityStep;
  if (t - h < 0.0) return (path.query(t + h) - path.query(t)) / h;
  if (t + h > 1.0) return (path.query(t) - path.query(t - h)) / h;
  return (path.query(t + h) - path.query(t - h)) / (2.0 * h);
}

}  // namespace

double evaluate_objective(const GpPath& path, const OccupancyModel& map, const RobotModel& robot,
                          double lambda, int sample_count, std::mt19937_64& rng) {
  if (sample_count < 1) throw std::invalid_argument("evaluate_objective: sample_count must be >= 1");
  const auto batch = sample_minibatch(rng, sample_count, robot);
  const double chord2 = (path.query(1.0) - path.query(0.0)).squaredNorm();
  double total = 0.0;
  for (const auto& s : batch) {
    const Eigen::VectorXd state = path.query(s.t);
    total += map.predict(robot.forward_kinematics(state, robot.body_points[s.body_index]));
    if (lambda != 0.0) total += lambda * 0.5 * (fd_velocity(path, s.t).squaredNorm() - chord2);
  }
  return total;
}

double max_occupancy_along(const GpPath& path, const OccupancyModel& map, const RobotModel& robot,
                           int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("max_occupancy_along: grid_size must be >= 2");
  double best = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const Eigen::VectorXd state = path.query(static_cast<double>(i) / (grid_size - 1));
    for (const auto& body : robot.body_points) {
      best = std::max(best, map.predict(robot.forward_kinematics(state, body)));
    }
  }
  return best;
}

bool check_convergence(const std::vector<IterationRecord>& trace, int window, double tolerance,
                       double p_safe, int max_iterations) {
  if (window < 2) throw std::invalid_argument("check_convergence: window must be >= 2");
  if (static_cast<int>(trace.size()) >= max_iterations) return true;
  if (static_cast<int>(trace.size()) < window) return false;
  double lo = trace.back().max_occupancy;
  double hi = lo;
  for (auto it = trace.end() - window; it != trace.end(); ++it) {
    lo = std::min(lo, it->max_occupancy);
    hi = std::max(hi, it->max_occupancy);
  }
  return hi - lo < tolerance && trace.back().max_occupancy < p_safe;
}

PlanResult plan(const OccupancyModel& map, const RobotModel& robot, const Eigen::VectorXd& start,
                const Eigen::VectorXd& goal, const PlannerConfig& config,
                const std::optional<Curve>& initial, const IterationObserver& observer) {
  robot.validate();
  config.validate(robot.config_dim);
  if (start.size() != robot.config_dim || goal.size() != robot.config_dim) {
    throw std::invalid_argument("plan: endpoint dimension does not match the robot");
  }
  if (map.dim() != robot.workspace_dim) {
    throw std::invalid_argument("plan: map dimension does not match the robot workspace");
  }
  if (start == goal) throw std::invalid_argument("plan: start equals goal");
  if (initial && initial->dim != robot.config_dim) {
    throw std::invalid_argument("plan: initial path dimension mismatch");
  }

  for (const auto& body : robot.body_points) {
    const double ps = map.predict(robot.forward_kinematics(start, body));
    const double pg = map.predict(robot.forward_kinematics(goal, body));
    if (ps > config.p_safe || pg > config.p_safe) {
      throw InfeasibleEndpoints("plan: endpoint occupancy (start " + std::to_string(ps) +
                                ", goal " + std::to_string(pg) + ") exceeds p_safe " +
                                std::to_string(config.p_safe));
    }
  }

  GpPath path(initial ? *initial : Curve::straight_line(start, goal), config.kernel,
              config.dedup_tolerance);
  if (observer) observer(-1, path);

  PlanResult result{path, {}, {}, PlanStatus::kStalledUnsafe, 0.0, 0.0, 0.0, config, config.seed};
  result.initial_max_occupancy = max_occupancy_along(path, map, robot, config.occupancy_grid);

  std::mt19937_64 rng(config.seed);
  std::mt19937_64 objective_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  for (int n = 0; n < config.max_iterations; ++n) {
    const double eta = config.step_size(n);
    auto batch = sample_minibatch(rng, config.minibatch_size, robot);
    std::stable_sort(batch.begin(), batch.end(),
                     [](const MinibatchSample& a, const MinibatchSample& b) { return a.t < b.t; });

    IterationRecord rec;
    rec.iteration = n;
    // Every sample sees the same path; updates are applied afterwards in t order.
    std::vector<UpdateOutcome> outcomes;
    outcomes.reserve(batch.size());
    for (const auto& sample : batch) {
      try {
        outcomes.push_back(propose_update(path, sample, map, robot, eta, config));
      } catch (const NumericFailure& e) {
        throw NumericFailure("plan: iteration " + std::to_string(n) + ": " + e.what());
      }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const UpdateOutcome& outcome = outcomes[i];
      if (outcome.accepted) {
        path.add_observation(batch[i].t, outcome.new_state, ObservationKind::kSupport);
      }
      result.updates.push_back({n, batch[i].t, outcome.occupancy, outcome.accepted});
      ++(outcome.accepted ? rec.accepted : rec.rejected);
    }

    path.set_boundary_conditions(start, goal);
    path = path.rebased();

    rec.max_occupancy = max_occupancy_along(path, map, robot, config.occupancy_grid);
    rec.objective = evaluate_objective(path, map, robot, config.lambda, config.objective_samples,
                                       objective_rng);
    rec.start_error = (path.query(0.0) - start).norm();
    rec.goal_error = (path.query(1.0) - goal).norm();
    if (!std::isfinite(rec.max_occupancy) || !std::isfinite(rec.objective)) {
      throw NumericFailure("plan: iteration " + std::to_string(n) + " produced a non-finite path");
    }
    result.trace.push_back(rec);
    if (observer) observer(n, path);

    if (check_convergence(result.trace, config.convergence_window, config.convergence_tolerance,
                          config.p_safe, config.max_iterations)) {
      break;
    }
  }

  result.final_max_occupancy = result.trace.empty() ? result.initial_max_occupancy
                                                    : result.trace.back().max_occupancy;
  result.status = result.final_max_occupancy < config.p_safe ? PlanStatus::kConverged
                                                             : PlanStatus::kStalledUnsafe;
  result.path_length = path_length(path);
  result.path = std::move(path);
  return result;
}

}  // namespace hmp
