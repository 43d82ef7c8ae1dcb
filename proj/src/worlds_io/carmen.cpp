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

#include "hmp/carmen.hpp"

#include <cmath>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

bool parse_double(const std::string& token, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(token, &used);
    return used == token.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_flaser(const std::vector<std::string>& tok, double max_range, LaserScan& scan) {
  // FLASER n r_1..r_n x y theta odom_x odom_y odom_theta ipc_ts host logger_ts
  if (tok.size() < 2) return false;
  double count = 0.0;
  if (!parse_double(tok[1], count) || count < 1.0 || count != std::floor(count)) return false;
  const auto n = static_cast<std::size_t>(count);
  if (tok.size() != n + 11) return false;

  scan.ranges.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (!parse_double(tok[2 + i], r) || r <= 0.0) return false;
    scan.ranges[i] = std::min(r, max_range);
  }
  double fields[7];
  for (std::size_t k = 0; k < 6; ++k) {
    if (!parse_double(tok[2 + n + k], fields[k])) return false;
  }
  if (!parse_double(tok[2 + n + 6], fields[6])) return false;  // ipc timestamp
  double logger_ts = 0.0;
  if (!parse_double(tok[2 + n + 8], logger_ts)) return false;

  scan.pose = Pose2d{fields[0], fields[1], fields[2]};
  scan.angle_min = -M_PI / 2.0;
  scan.angle_increment = n > 1 ? M_PI / static_cast<double>(n - 1) : 0.0;
  scan.max_range = max_range;
  scan.timestamp = fields[6];
  return true;
}

}  // namespace

CarmenParseResult parse_carmen_log(std::istream& in, double max_range) {
  if (!(max_range > 0.0)) throw std::invalid_argument("carmen: max_range must be positive");
  CarmenParseResult result;
  std::string line;
  bool any_content = false;
  while (std::getline(in, line)) {
    ++result.lines;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;
    any_content = true;
    if (tok[0].front() == '#' || tok[0] != "FLASER") continue;
    LaserScan scan;
    if (parse_flaser(tok, max_range, scan)) {
      result.scans.push_back(std::move(scan));
    } else {
      ++result.skipped_malformed;
    }
  }
  if (any_content && result.scans.empty()) {
    throw ParseFailure("carmen: no valid FLASER records in " + std::to_string(result.lines) +
                       " lines (" + std::to_string(result.skipped_malformed) + " malformed)");
  }
  return result;
}

LabeledPointCloud raycast_label(const std::vector<LaserScan>& scans, const RaycastConfig& config) {
  if (!(config.free_spacing > 0.0)) throw std::invalid_argument("raycast: spacing must be > 0");
  if (!(config.max_range > 0.0)) throw std::invalid_argument("raycast: max_range must be > 0");
  if (!(config.free_jitter >= 0.0 && config.free_jitter < 1.0)) {
    throw std::invalid_argument("raycast: jitter must lie in [0, 1)");
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> jitter(-0.5 * config.free_jitter, 0.5 * config.free_jitter);
  LabeledPointCloud cloud;
  cloud.provenance = Provenance::kLogDerived;
  cloud.seed = config.seed;

  for (const auto& scan : scans) {
    const Eigen::Vector2d origin(scan.pose.x, scan.pose.y);
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
      const double angle = scan.beam_angle(i);
      const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
      const double range = std::min(scan.ranges[i], config.max_range);
      for (int k = 1;; ++k) {
        double s = k * config.free_spacing;
        if (config.free_jitter > 0.0) s += jitter(rng) * config.free_spacing;
        if (s >= range) break;
        cloud.samples.push_back({Eigen::VectorXd(origin + s * dir), -1});
      }
      if (range < config.max_range) {
        cloud.samples.push_back({Eigen::VectorXd(origin + range * dir), +1});
      }
    }
  }
  return cloud;
}

}  // namespace hmp
