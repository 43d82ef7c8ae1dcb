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

#include "hmp/fixed_support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "hmp/errors.hpp"

namespace hmp {

CostSource CostSource::from(const CostField& field) {
  // Evaluated without the bounds check so iterates may leave the raster area.
  return {[field](const Eigen::Vector2d& x) {
            return distance_cost(distance_to_obstacles(field.environment(), x), field.epsilon());
          },
          [field](const Eigen::Vector2d& x) { return field.gradient_at(x); }};
}

CostSource CostSource::from(const OccupancyModel& map) {
  return {[map](const Eigen::Vector2d& x) { return map.predict(x); },
          [map](const Eigen::Vector2d& x) -> Eigen::Vector2d { return map.gradient(x); }};
}

Eigen::Vector2d FixedSupportPath::at(double t) const {
  if (supports.empty()) throw std::invalid_argument("fixed support path is empty");
  if (supports.size() == 1 || t <= 0.0) return supports.front();
  if (t >= 1.0) return supports.back();
  const double pos = t * static_cast<double>(supports.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), supports.size() - 2);
  const double s = pos - static_cast<double>(i);
  return (1.0 - s) * supports[i] + s * supports[i + 1];
}

double fixed_support_objective(const CostSource& source, const std::vector<Eigen::Vector2d>& supports,
                               double lambda) {
  double total = 0.0;
  for (const auto& p : supports) total += source.cost(p);
  if (supports.size() > 1) {
    const double inv_dt = static_cast<double>(supports.size() - 1);
    double energy = 0.0;
    for (std::size_t i = 1; i < supports.size(); ++i) {
      energy += (supports[i] - supports[i - 1]).squaredNorm();
    }
    total += 0.5 * lambda * inv_dt * energy;
  }
  return total;
}

FixedSupportPath fixed_support_plan(const CostSource& source, const Eigen::Vector2d& start,
                                    const Eigen::Vector2d& goal, const FixedSupportConfig& config) {
  const int n = config.support_size;
  if (n < 2) throw std::invalid_argument("fixed support: need at least 2 supports");
  if (!(config.beta > 0.0)) throw std::invalid_argument("fixed support: beta must be positive");
  if (!(config.lambda >= 0.0)) throw std::invalid_argument("fixed support: lambda must be >= 0");
  const int interior = n - 2;
  Eigen::MatrixXd metric = config.metric.size() == 0
                               ? Eigen::MatrixXd::Identity(interior, interior)
                               : config.metric;
  if (metric.rows() != interior || metric.cols() != interior) {
    throw std::invalid_argument("fixed support: metric must be (N-2) x (N-2)");
  }
  Eigen::LLT<Eigen::MatrixXd> metric_llt(metric);
  if (interior > 0 && metric_llt.info() != Eigen::Success) {
    throw std::invalid_argument("fixed support: metric must be positive definite");
  }

  FixedSupportPath path;
  path.beta = config.beta;
  path.metric = metric;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    path.times.push_back(t);
    path.supports.push_back(start + t * (goal - start));
  }
  path.supports.back() = goal;
  if (start == goal || interior == 0) {
    path.objective_history.push_back(fixed_support_objective(source, path.supports, config.lambda));
    return path;
  }

  const double inv_dt = static_cast<double>(n - 1);
  path.objective_history.push_back(fixed_support_objective(source, path.supports, config.lambda));
  Eigen::MatrixXd grad(interior, 2);
  for (int it = 0; it < config.iterations; ++it) {
    for (int i = 1; i <= interior; ++i) {
      const auto& prev = path.supports[static_cast<std::size_t>(i - 1)];
      const auto& cur = path.supports[static_cast<std::size_t>(i)];
      const auto& next = path.supports[static_cast<std::size_t>(i + 1)];
      const Eigen::Vector2d g = source.gradient(cur) + config.lambda * inv_dt * (2.0 * cur - prev - next);
      grad.row(i - 1) = g.transpose();
    }
    const Eigen::MatrixXd step = metric_llt.solve(grad) / config.beta;
    if (!step.allFinite()) {
      throw NumericFailure("fixed support: non-finite update at iteration " + std::to_string(it));
    }
    double moved = 0.0;
    for (int i = 1; i <= interior; ++i) {
      path.supports[static_cast<std::size_t>(i)] -= step.row(i - 1).transpose();
      moved = std::max(moved, step.row(i - 1).norm());
    }
    const double objective = fixed_support_objective(source, path.supports, config.lambda);
    if (!std::isfinite(objective)) {
      throw NumericFailure("fixed support: objective diverged at iteration " + std::to_string(it));
    }
    path.objective_history.push_back(objective);
    path.iterations_run = it + 1;
    if (moved < config.tolerance) break;
  }
  return path;
}

}  // namespace hmp
