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

#include "hmp/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmp {

namespace {

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

bool polygon_contains(const Polygon& poly, const Eigen::Vector2d& p) {
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y() > p.y()) != (v[j].y() > p.y()) &&
        p.x() < (v[j].x() - v[i].x()) * (p.y() - v[i].y()) / (v[j].y() - v[i].y()) + v[i].x()) {
      inside = !inside;
    }
  }
  return inside;
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

struct SignedDistance {
  const Eigen::Vector2d& x;

  double operator()(const Circle& c) const { return (x - c.center).norm() - c.radius; }

  double operator()(const Rectangle& r) const {
    const Eigen::Vector2d half = 0.5 * r.extents;
    const Eigen::Vector2d q = (x - (r.corner + half)).cwiseAbs() - half;
    const double outside = q.cwiseMax(0.0).norm();
    const double inside = std::min(std::max(q.x(), q.y()), 0.0);
    return outside + inside;
  }

  double operator()(const Polygon& p) const {
    if (p.vertices.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    double d = std::numeric_limits<double>::infinity();
    const auto& v = p.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      d = std::min(d, segment_distance(x, v[i], v[(i + 1) % v.size()]));
    }
    return polygon_contains(p, x) ? -d : d;
  }
};

struct Perimeter {
  double operator()(const Circle& c) const { return 2.0 * M_PI * c.radius; }
  double operator()(const Rectangle& r) const { return 2.0 * (r.extents.x() + r.extents.y()); }
  double operator()(const Polygon& p) const {
    double total = 0.0;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      total += (p.vertices[(i + 1) % p.vertices.size()] - p.vertices[i]).norm();
    }
    return total;
  }
};

Eigen::Vector2d walk_polyline(const std::vector<Eigen::Vector2d>& v, double s) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Eigen::Vector2d& a = v[i];
    const Eigen::Vector2d& b = v[(i + 1) % v.size()];
    const double len = (b - a).norm();
    if (s <= len || i + 1 == v.size()) {
      return len > 0.0 ? Eigen::Vector2d(a + std::min(s / len, 1.0) * (b - a)) : a;
    }
    s -= len;
  }
  return v.front();
}

struct BoundaryPoint {
  double s;

  Eigen::Vector2d operator()(const Circle& c) const {
    const double angle = s / c.radius;
    return c.center + c.radius * Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }
  Eigen::Vector2d operator()(const Rectangle& r) const {
    const Eigen::Vector2d& c = r.corner;
    const Eigen::Vector2d& e = r.extents;
    return walk_polyline({c, c + Eigen::Vector2d(e.x(), 0.0), c + e, c + Eigen::Vector2d(0.0, e.y())},
                         s);
  }
  Eigen::Vector2d operator()(const Polygon& p) const { return walk_polyline(p.vertices, s); }
};

struct BoundingBox {
  Bounds operator()(const Circle& c) const {
    const Eigen::Vector2d r(c.radius, c.radius);
    return {c.center - r, c.center + r};
  }
  Bounds operator()(const Rectangle& r) const { return {r.corner, r.corner + r.extents}; }
  Bounds operator()(const Polygon& p) const {
    Bounds b{p.vertices.front(), p.vertices.front()};
    for (const auto& v : p.vertices) {
      b.min = b.min.cwiseMin(v);
      b.max = b.max.cwiseMax(v);
    }
    return b;
  }
};

}  // namespace

double signed_distance(const Obstacle& obstacle, const Eigen::Vector2d& x) {
  return std::visit(SignedDistance{x}, obstacle);
}

double distance_to_obstacles(const Environment& env, const Eigen::Vector2d& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& o : env.obstacles) d = std::min(d, signed_distance(o, x));
  return d;
}

double perimeter(const Obstacle& obstacle) { return std::visit(Perimeter{}, obstacle); }

Eigen::Vector2d boundary_point(const Obstacle& obstacle, double s) {
  return std::visit(BoundaryPoint{s}, obstacle);
}

Bounds bounding_box(const Obstacle& obstacle) { return std::visit(BoundingBox{}, obstacle); }

bool is_simple(const Polygon& polygon) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

}  // namespace hmp
