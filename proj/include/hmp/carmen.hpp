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
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "hmp/labeled_data.hpp"

namespace hmp {

struct Pose2d {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct LaserScan {
  Pose2d pose;
  std::vector<double> ranges;
  double angle_min = 0.0;
  double angle_increment = 0.0;
  double max_range = 0.0;
  double timestamp = 0.0;

  double beam_angle(std::size_t i) const {
    return pose.theta + angle_min + static_cast<double>(i) * angle_increment;
  }
};

struct CarmenParseResult {
  std::vector<LaserScan> scans;
  std::size_t lines = 0;
  std::size_t skipped_malformed = 0;
};

/**
 * Reads FLASER records from a CARMEN log:
 *
 *   FLASER n r_1 ... r_n x y theta odom_x odom_y odom_theta ipc_ts host logger_ts
 *
 * Beams span 180 degrees, from -pi/2 to +pi/2 relative to the heading, with
 * increment pi / (n - 1). Other record types and '#' comments are ignored;
 * malformed FLASER lines are skipped and counted. Odometry fields are read
 * for validation only. Ranges beyond max_range are clipped to it.
 *
 * Throws ParseFailure when a non-empty stream yields no scan.
 */
CarmenParseResult parse_carmen_log(std::istream& in, double max_range = 20.0);

struct RaycastConfig {
  /// Distance between free samples along a beam, meters.
  double free_spacing = 0.3;
  /// Returns at or beyond this range carry no hit.
  double max_range = 20.0;
  /// Random offset of each free sample, as a fraction of the spacing. 0 keeps
  /// samples at exact multiples of the spacing.
  double free_jitter = 0.0;
  std::uint64_t seed = 0;
};

/// Converts scans into labeled samples: a hit at each beam endpoint short of
/// max_range and free samples every free_spacing meters strictly before it.
LabeledPointCloud raycast_label(const std::vector<LaserScan>& scans, const RaycastConfig& config);

}  // namespace hmp
