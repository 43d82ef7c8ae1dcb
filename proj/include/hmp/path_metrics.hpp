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

#include "hmp/gp_path.hpp"
#include "hmp/occupancy_model.hpp"

namespace hmp {

/// Ordered waypoints from start to goal.
struct WaypointPath {
  std::vector<Eigen::Vector2d> waypoints;

  double length() const;
};

/// Sum of segment lengths; needs at least two points.
double path_length(const WaypointPath& path);

/// Maximum occupancy along the segments, sampled every `spacing` meters
/// (segment endpoints included).
double max_occupancy_along(const WaypointPath& path, const OccupancyModel& map,
                           double spacing = 0.01);

/// CSV with header "index,x,y".
void write_waypoints_csv(const WaypointPath& path, std::ostream& out);
WaypointPath read_waypoints_csv(std::istream& in);

}  // namespace hmp
