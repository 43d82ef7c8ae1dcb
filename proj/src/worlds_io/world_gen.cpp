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

#include "hmp/world_gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "hmp/errors.hpp"

namespace hmp {

namespace {
constexpr double kBoundaryTolerance = 1e-9;
}  // namespace

Environment generate_random_world(std::uint64_t seed, const WorldGenConfig& config) {
  if (config.num_obstacles < 0) throw std::invalid_argument("world gen: negative obstacle count");
  if (!config.bounds.valid()) throw std::invalid_argument("world gen: invalid bounds");
  if (!(config.min_size > 0.0 && config.min_size <= config.max_size)) {
    throw std::invalid_argument("world gen: invalid size range");
  }
  const Eigen::Vector2d span = config.bounds.max - config.bounds.min;
  if (2.0 * config.min_size >= span.minCoeff()) {
    throw std::invalid_argument("world gen: obstacles cannot fit in bounds");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> size(config.min_size, config.max_size);

  Environment env;
  env.bounds = config.bounds;
  for (int k = 0; k < config.num_obstacles; ++k) {
    int rejections = 0;
    while (true) {
      Obstacle candidate;
      if (unit(rng) < 0.5) {
        const double r = size(rng);
        const Eigen::Vector2d lo = config.bounds.min.array() + r;
        const Eigen::Vector2d hi = config.bounds.max.array() - r;
        const Eigen::Vector2d c(lo.x() + unit(rng) * (hi.x() - lo.x()),
                                lo.y() + unit(rng) * (hi.y() - lo.y()));
        candidate = Circle{c, r};
      } else {
        const Eigen::Vector2d half(size(rng), size(rng));
        const Eigen::Vector2d lo = config.bounds.min + half;
        const Eigen::Vector2d hi = config.bounds.max - half;
        const Eigen::Vector2d c(lo.x() + unit(rng) * (hi.x() - lo.x()),
                                lo.y() + unit(rng) * (hi.y() - lo.y()));
        candidate = Rectangle{c - half, 2.0 * half};
      }
      if (signed_distance(candidate, config.start) > config.endpoint_clearance &&
          signed_distance(candidate, config.goal) > config.endpoint_clearance) {
        env.obstacles.push_back(std::move(candidate));
        break;
      }
      if (++rejections >= config.max_rejections) {
        throw PlacementFailure("world gen: could not place obstacle " + std::to_string(k) +
                               " after " + std::to_string(rejections) + " rejections");
      }
    }
  }
  return env;
}

LabeledPointCloud synthesize_observations(const Environment& env, double boundary_density,
                                          double free_density, std::uint64_t seed) {
  if (!(boundary_density > 0.0 && free_density > 0.0)) {
    throw std::invalid_argument("synthesize: densities must be positive");
  }
  if (!env.bounds.valid()) throw std::invalid_argument("synthesize: invalid bounds");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabeledPointCloud cloud;
  cloud.provenance = Provenance::kSynthetic;
  cloud.seed = seed;

  for (const auto& obstacle : env.obstacles) {
    const double len = perimeter(obstacle);
    const auto count = static_cast<int>(std::ceil(len * boundary_density));
    for (int i = 0; i < count; ++i) {
      const Eigen::Vector2d p = boundary_point(obstacle, unit(rng) * len);
      // Boundary stretches buried inside an overlapping obstacle are unobservable.
      if (distance_to_obstacles(env, p) < -kBoundaryTolerance) continue;
      cloud.samples.push_back({Eigen::VectorXd(p), +1});
    }
  }

  const auto draws = static_cast<int>(std::ceil(env.bounds.area() * free_density));
  const Eigen::Vector2d span = env.bounds.max - env.bounds.min;
  for (int i = 0; i < draws; ++i) {
    const Eigen::Vector2d p(env.bounds.min.x() + unit(rng) * span.x(),
                            env.bounds.min.y() + unit(rng) * span.y());
    if (distance_to_obstacles(env, p) > 0.0) cloud.samples.push_back({Eigen::VectorXd(p), -1});
  }
  return cloud;
}

}  // namespace hmp
