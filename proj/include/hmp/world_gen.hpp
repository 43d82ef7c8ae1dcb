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

#include "hmp/environment.hpp"
#include "hmp/labeled_data.hpp"

namespace hmp {

struct WorldGenConfig {
  int num_obstacles = 8;
  Bounds bounds{Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(10.0, 10.0)};
  /// Circle radius / rectangle half-extent range, meters.
  double min_size = 0.5;
  double max_size = 1.2;
  Eigen::Vector2d start = Eigen::Vector2d(0.5, 0.5);
  Eigen::Vector2d goal = Eigen::Vector2d(9.5, 9.5);
  /// Radius of the discs around start and goal kept obstacle-free.
  double endpoint_clearance = 0.75;
  int max_rejections = 10000;
};

/// Places circles and axis-aligned rectangles uniformly inside the bounds,
/// rejecting any that intrude on the start/goal discs. Deterministic per seed.
/// Throws PlacementFailure after max_rejections consecutive rejections.
Environment generate_random_world(std::uint64_t seed, const WorldGenConfig& config);

/// Labeled dataset for an environment: occupied samples uniform in arc length
/// on obstacle boundaries (boundary_density per meter) and free samples
/// uniform in free space (free_density per square meter of the bounds).
/// Nothing is ever placed strictly inside an obstacle.
LabeledPointCloud synthesize_observations(const Environment& env, double boundary_density,
                                          double free_density, std::uint64_t seed);

}  // namespace hmp
