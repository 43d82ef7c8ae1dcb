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

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "hmp/environment.hpp"

namespace hmp {

/// Obstacle cost as a function of signed distance d with safety buffer eps:
///   -d + eps/2            for d < 0
///   (d - eps)^2 / (2 eps) for 0 <= d <= eps
///   0                     otherwise
double distance_cost(double d, double epsilon);

/// Derivative of distance_cost with respect to d.
double distance_cost_slope(double d, double epsilon);

/// Row-major raster of a cost field, for plotting.
struct CostGrid {
  Eigen::Vector2d origin;
  double resolution = 0.0;
  int cols = 0;
  int rows = 0;
  std::vector<double> values;  // values[row * cols + col], row along y

  /// Header "# origin_x origin_y resolution cols rows" then one CSV row per y.
  void write_csv(std::ostream& out) const;
};

/**
 * Precomputed-style distance cost over an environment. Values are evaluated
 * from exact signed distances; rasterize() produces the lattice form.
 */
class CostField {
 public:
  CostField(Environment env, double epsilon);

  double epsilon() const { return epsilon_; }
  const Environment& environment() const { return env_; }

  /// Throws std::invalid_argument outside the environment bounds.
  double cost_at(const Eigen::Vector2d& x) const;
  /// Spatial gradient via central differences of the signed distance.
  Eigen::Vector2d gradient_at(const Eigen::Vector2d& x) const;

  CostGrid rasterize(double resolution) const;

 private:
  Environment env_;
  double epsilon_;
};

}  // namespace hmp
