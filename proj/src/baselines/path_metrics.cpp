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

#include "hmp/path_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hmp/errors.hpp"

namespace hmp {

double WaypointPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += (waypoints[i] - waypoints[i - 1]).norm();
  return total;
}

double path_length(const WaypointPath& path) {
  if (path.waypoints.size() < 2) throw std::invalid_argument("path_length: need >= 2 points");
  return path.length();
}

double max_occupancy_along(const WaypointPath& path, const OccupancyModel& map, double spacing) {
  if (path.waypoints.empty()) throw std::invalid_argument("max_occupancy_along: empty path");
  if (!(spacing > 0.0)) throw std::invalid_argument("max_occupancy_along: spacing must be > 0");
  double best = map.predict(path.waypoints.front());
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Eigen::Vector2d& a = path.waypoints[i - 1];
    const Eigen::Vector2d& b = path.waypoints[i];
    const int steps = std::max(1, static_cast<int>(std::ceil((b - a).norm() / spacing)));
    for (int k = 1; k <= steps; ++k) {
      const Eigen::Vector2d p = a + (static_cast<double>(k) / steps) * (b - a);
      best = std::max(best, map.predict(p));
    }
  }
  return best;
}

void write_waypoints_csv(const WaypointPath& path, std::ostream& out) {
  out << "index,x,y\n" << std::setprecision(17);
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    out << i << ',' << path.waypoints[i].x() << ',' << path.waypoints[i].y() << '\n';
  }
}

WaypointPath read_waypoints_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "index,x,y") throw FormatError("missing header 'index,x,y'", 1);
  WaypointPath path;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::size_t index = 0;
    double x = 0.0, y = 0.0;
    if (!(ss >> index >> x >> y)) throw FormatError("malformed waypoint row", lineno);
    path.waypoints.emplace_back(x, y);
  }
  return path;
}

}  // namespace hmp
