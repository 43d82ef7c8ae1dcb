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

#include "hmp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "hmp/dataset_io.hpp"
#include "hmp/errors.hpp"
#include "hmp/path_metrics.hpp"

namespace hmp {

std::string to_string(WorldSource source) {
  switch (source) {
    case WorldSource::kGenerated:
      return "generated";
    case WorldSource::kEnvironmentFile:
      return "environment";
    case WorldSource::kCarmenLog:
      return "carmen";
    case WorldSource::kDatasetFile:
      return "dataset";
  }
  return "unknown";
}

WorldSource world_source_from_string(const std::string& name) {
  if (name == "generated") return WorldSource::kGenerated;
  if (name == "environment") return WorldSource::kEnvironmentFile;
  if (name == "carmen") return WorldSource::kCarmenLog;
  if (name == "dataset") return WorldSource::kDatasetFile;
  throw std::invalid_argument("unknown world source '" + name + "'");
}

std::string to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kSfgmp:
      return "sfgmp";
    case PlannerKind::kRrtStar:
      return "rrt*";
    case PlannerKind::kPrmStar:
      return "prm*";
    case PlannerKind::kFixedSupport:
      return "fixed-support";
  }
  return "unknown";
}

PlannerKind planner_from_string(const std::string& name) {
  if (name == "sfgmp") return PlannerKind::kSfgmp;
  if (name == "rrt*" || name == "rrtstar") return PlannerKind::kRrtStar;
  if (name == "prm*" || name == "prmstar") return PlannerKind::kPrmStar;
  if (name == "fixed-support") return PlannerKind::kFixedSupport;
  throw std::invalid_argument("unknown planner '" + name + "'");
}

LabeledPointCloud build_dataset(const WorldSpec& world, const MapConfig& config,
                                std::optional<Environment>* environment) {
  std::optional<Environment> env;
  LabeledPointCloud data;
  switch (world.source) {
    case WorldSource::kGenerated:
      env = generate_random_world(world.seed, world.generator);
      break;
    case WorldSource::kEnvironmentFile:
      env = load_environment_file(world.path);
      break;
    case WorldSource::kCarmenLog: {
      std::ifstream in(world.path);
      if (!in) throw std::invalid_argument("cannot open CARMEN log '" + world.path + "'");
      const CarmenParseResult parsed = parse_carmen_log(in, config.raycast.max_range);
      data = raycast_label(parsed.scans, config.raycast);
      break;
    }
    case WorldSource::kDatasetFile:
      data = load_dataset_file(world.path);
      break;
  }
  if (env) {
    data = synthesize_observations(*env, config.boundary_density, config.free_density,
                                   config.data_seed);
  }
  if (environment) *environment = std::move(env);
  return data;
}

BuiltMap build_map(const WorldSpec& world, const MapConfig& config) {
  std::optional<Environment> env;
  LabeledPointCloud data = build_dataset(world, config, &env);
  if (data.empty()) throw std::invalid_argument("build_map: the world produced no samples");
  const int dim = static_cast<int>(data.samples.front().position.size());
  OccupancyModel model = train(
      data, FeatureMap::random(config.gamma, config.num_features, dim, config.feature_seed),
      config.train);
  return {std::move(env), std::move(data), std::move(model)};
}

Bounds data_bounds(const LabeledPointCloud& data, double margin) {
  if (data.empty()) throw std::invalid_argument("data_bounds: empty dataset");
  Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = -lo;
  for (const auto& s : data.samples) {
    if (s.position.size() != 2) throw std::invalid_argument("data_bounds: expected 2-d samples");
    lo = lo.cwiseMin(s.position.head<2>());
    hi = hi.cwiseMax(s.position.head<2>());
  }
  const Eigen::Vector2d pad = Eigen::Vector2d::Constant(margin);
  return {lo - pad, hi + pad};
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw std::invalid_argument("experiment: repetitions must be >= 1");
  if (planners.empty()) throw std::invalid_argument("experiment: no planners selected");
  if (world.source != WorldSource::kGenerated) {
    if (world.path.empty()) throw std::invalid_argument("experiment: world source needs a path");
    if (!std::filesystem::exists(world.path)) {
      throw std::invalid_argument("experiment: world file '" + world.path + "' does not exist");
    }
  }
  if (!(map.gamma > 0.0) || map.num_features < 1) {
    throw std::invalid_argument("experiment: gamma and num_features must be positive");
  }
  if (!start.allFinite() || !goal.allFinite()) {
    throw std::invalid_argument("experiment: start and goal must be finite");
  }
  sfgmp.validate(2);
}

PlannerSummary summarize(PlannerKind planner, const std::vector<RunRecord>& runs) {
  PlannerSummary s;
  s.planner = planner;
  std::vector<double> occ;
  std::vector<double> len;
  double time = 0.0;
  for (const auto& r : runs) {
    if (r.planner != planner) continue;
    ++s.runs;
    if (!r.success) {
      ++s.failures;
      continue;
    }
    occ.push_back(r.max_occupancy);
    len.push_back(r.path_length);
    time += r.wall_seconds;
  }
  auto mean_std = [](const std::vector<double>& v, double& mean, double& std) {
    mean = std = 0.0;
    if (v.empty()) return;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  };
  mean_std(occ, s.mean_max_occupancy, s.std_max_occupancy);
  mean_std(len, s.mean_path_length, s.std_path_length);
  if (!occ.empty()) s.mean_wall_seconds = time / static_cast<double>(occ.size());
  return s;
}

std::vector<PlannerSummary> summarize_all(const std::vector<RunRecord>& runs) {
  std::vector<PlannerKind> order;
  for (const auto& r : runs) {
    if (std::find(order.begin(), order.end(), r.planner) == order.end()) order.push_back(r.planner);
  }
  std::vector<PlannerSummary> out;
  for (PlannerKind p : order) out.push_back(summarize(p, runs));
  return out;
}

RunRecord run_planner(PlannerKind planner, const OccupancyModel& map, const ExperimentConfig& config,
                      int repetition, std::uint64_t seed) {
  RunRecord rec;
  rec.planner = planner;
  rec.repetition = repetition;
  rec.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (planner) {
      case PlannerKind::kSfgmp: {
        PlannerConfig pc = config.sfgmp;
        pc.seed = seed;
        const PlanResult result =
            plan(map, RobotModel::point_robot(2), config.start, config.goal, pc);
        rec.status = to_string(result.status);
        rec.max_occupancy = result.final_max_occupancy;
        rec.path_length = result.path_length;
        break;
      }
      case PlannerKind::kRrtStar:
      case PlannerKind::kPrmStar: {
        SamplingConfig sc = config.sampling;
        sc.seed = seed;
        const WaypointPath path = planner == PlannerKind::kRrtStar
                                      ? rrt_star_plan(map, config.start, config.goal, sc)
                                      : prm_star_plan(map, config.start, config.goal, sc);
        rec.status = "path-found";
        rec.max_occupancy = max_occupancy_along(path, map);
        rec.path_length = path.length();
        break;
      }
      case PlannerKind::kFixedSupport: {
        const FixedSupportPath path = fixed_support_plan(CostSource::from(map), config.start,
                                                         config.goal, config.fixed_support);
        const WaypointPath wp = path.as_waypoints();
        rec.max_occupancy = max_occupancy_along(wp, map);
        rec.status = rec.max_occupancy < config.sfgmp.p_safe ? "safe" : "unsafe";
        rec.path_length = wp.length();
        break;
      }
    }
    rec.success = true;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    rec.success = false;
    rec.status = "failed";
    rec.error = e.what();
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

ComparisonReport run_comparison(const OccupancyModel& map, const ExperimentConfig& config,
                                const RunObserver& observer) {
  config.validate();
  if (config.planners.size() < 2) {
    throw std::invalid_argument("compare: select at least two planners");
  }
  ComparisonReport report;
  for (PlannerKind planner : config.planners) {
    for (int i = 0; i < config.repetitions; ++i) {
      const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(i);
      report.runs.push_back(run_planner(planner, map, config, i, seed));
      if (observer) observer(report.runs.back());
    }
  }
  report.summaries = summarize_all(report.runs);
  return report;
}

}  // namespace hmp
