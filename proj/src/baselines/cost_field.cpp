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

#include "hmp/cost_field.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace hmp {

double distance_cost(double d, double epsilon) {
  if (d < 0.0) return -d + 0.5 * epsilon;
  if (d <= epsilon) return (d - epsilon) * (d - epsilon) / (2.0 * epsilon);
  return 0.0;
}

double distance_cost_slope(double d, double epsilon) {
  if (d < 0.0) return -1.0;
  if (d <= epsilon) return (d - epsilon) / epsilon;
  return 0.0;
}

void CostGrid::write_csv(std::ostream& out) const {
  out << "# " << std::setprecision(17) << origin.x() << ' ' << origin.y() << ' ' << resolution
      << ' ' << cols << ' ' << rows << '\n';
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out << (c ? "," : "") << values[static_cast<std::size_t>(r * cols + c)];
    }
    out << '\n';
  }
}

CostField::CostField(Environment env, double epsilon) : env_(std::move(env)), epsilon_(epsilon) {
  if (!(epsilon_ > 0.0)) throw std::invalid_argument("cost field: epsilon must be positive");
  if (!env_.bounds.valid()) throw std::invalid_argument("cost field: invalid bounds");
}

double CostField::cost_at(const Eigen::Vector2d& x) const {
  if (!env_.bounds.contains(x)) throw std::invalid_argument("cost field: query outside bounds");
  return distance_cost(distance_to_obstacles(env_, x), epsilon_);
}

Eigen::Vector2d CostField::gradient_at(const Eigen::Vector2d& x) const {
  constexpr double h = 1e-6;
  const double d = distance_to_obstacles(env_, x);
  if (!std::isfinite(d)) return Eigen::Vector2d::Zero();
  Eigen::Vector2d grad_d;
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector2d up = x, down = x;
    up(k) += h;
    down(k) -= h;
    grad_d(k) = (distance_to_obstacles(env_, up) - distance_to_obstacles(env_, down)) / (2.0 * h);
  }
  return distance_cost_slope(d, epsilon_) * grad_d;
}

CostGrid CostField::rasterize(double resolution) const {
  if (!(resolution > 0.0)) throw std::invalid_argument("cost field: resolution must be positive");
  CostGrid grid;
  grid.origin = env_.bounds.min;
  grid.resolution = resolution;
  const Eigen::Vector2d span = env_.bounds.max - env_.bounds.min;
  grid.cols = static_cast<int>(std::floor(span.x() / resolution)) + 1;
  grid.rows = static_cast<int>(std::floor(span.y() / resolution)) + 1;
  grid.values.reserve(static_cast<std::size_t>(grid.cols * grid.rows));
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      const Eigen::Vector2d p = grid.origin + resolution * Eigen::Vector2d(c, r);
      grid.values.push_back(distance_cost(distance_to_obstacles(env_, p), epsilon_));
    }
  }
  return grid;
}

}  // namespace hmp
