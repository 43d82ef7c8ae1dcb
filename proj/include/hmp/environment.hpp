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

#include <variant>
#include <vector>

#include <Eigen/Core>

namespace hmp {

struct Circle {
  Eigen::Vector2d center;
  double radius = 0.0;
};

/// Axis-aligned rectangle given by its minimum corner and extents.
struct Rectangle {
  Eigen::Vector2d corner;
  Eigen::Vector2d extents;
};

/// Simple polygon, vertices in order (either orientation).
struct Polygon {
  std::vector<Eigen::Vector2d> vertices;
};

using Obstacle = std::variant<Circle, Rectangle, Polygon>;

struct Bounds {
  Eigen::Vector2d min = Eigen::Vector2d::Zero();
  Eigen::Vector2d max = Eigen::Vector2d::Zero();

  bool valid() const { return (min.array() < max.array()).all(); }
  bool contains(const Eigen::Vector2d& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  double area() const { return (max - min).prod(); }
};

struct Environment {
  Bounds bounds;
  std::vector<Obstacle> obstacles;
};

/// Signed distance to one obstacle's boundary: positive outside, negative inside.
double signed_distance(const Obstacle& obstacle, const Eigen::Vector2d& x);

/// Signed distance to the nearest obstacle boundary (minimum over obstacles).
/// +infinity for an environment without obstacles.
double distance_to_obstacles(const Environment& env, const Eigen::Vector2d& x);

double perimeter(const Obstacle& obstacle);

/// Point on the boundary at arc length s in [0, perimeter).
Eigen::Vector2d boundary_point(const Obstacle& obstacle, double s);

/// Axis-aligned bounding box of an obstacle.
Bounds bounding_box(const Obstacle& obstacle);

/// True when no two non-adjacent edges intersect.
bool is_simple(const Polygon& polygon);

}  // namespace hmp
