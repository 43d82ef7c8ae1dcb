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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hmp/carmen.hpp"
#include "hmp/environment.hpp"
#include "hmp/fixed_support.hpp"
#include "hmp/labeled_data.hpp"
#include "hmp/occupancy_model.hpp"
#include "hmp/sampling_planners.hpp"
#include "hmp/sfg_planner.hpp"
#include "hmp/world_gen.hpp"

namespace hmp {

enum class WorldSource { kGenerated, kEnvironmentFile, kCarmenLog, kDatasetFile };

std::string to_string(WorldSource source);
WorldSource world_source_from_string(const std::string& name);

struct WorldSpec {
  WorldSource source = WorldSource::kGenerated;
  /// Generator seed for kGenerated.
  std::uint64_t seed = 0;
  WorldGenConfig generator;
  /// Input file for the file-backed sources.
  std::string path;
};

/// Everything needed to turn a world into a trained occupancy model.
struct MapConfig {
  double gamma = 4.0;
  int num_features = 1000;
  std::uint64_t feature_seed = 3;
  /// Occupied samples per meter of obstacle boundary.
  double boundary_density = 20.0;
  /// Free samples per square meter of workspace.
  double free_density = 30.0;
  std::uint64_t data_seed = 1;
  TrainConfig train{1.0, 1e-3, 20, 1e-4, 1e-4, 0, true};
  RaycastConfig raycast;
};

struct BuiltMap {
  /// Present for generated and environment-file worlds.
  std::optional<Environment> environment;
  LabeledPointCloud data;
  OccupancyModel model;
};

/// Loads or generates the world, labels it and trains the model.
/// Throws std::invalid_argument or the loaders' exceptions on bad input.
LabeledPointCloud build_dataset(const WorldSpec& world, const MapConfig& config,
                                std::optional<Environment>* environment = nullptr);
BuiltMap build_map(const WorldSpec& world, const MapConfig& config);

/// Axis-aligned box containing every sample, padded by `margin`.
Bounds data_bounds(const LabeledPointCloud& data, double margin);

/// Occupancy raster, header "x,y,occupancy", cell centres on a regular grid.
void write_occupancy_grid_csv(const OccupancyModel& model, const Bounds& bounds, double resolution,
                              std::ostream& out);

struct GridSample {
  double x = 0.0;
  double y = 0.0;
  double occupancy = 0.0;
};
std::vector<GridSample> read_occupancy_grid_csv(std::istream& in);

enum class PlannerKind { kSfgmp, kRrtStar, kPrmStar, kFixedSupport };

std::string to_string(PlannerKind kind);
/// Accepts "sfgmp", "rrt*"/"rrtstar", "prm*"/"prmstar", "fixed-support".
PlannerKind planner_from_string(const std::string& name);

struct ExperimentConfig {
  WorldSpec world;
  MapConfig map;
  std::vector<PlannerKind> planners{PlannerKind::kSfgmp, PlannerKind::kRrtStar,
                                    PlannerKind::kPrmStar};
  PlannerConfig sfgmp;
  SamplingConfig sampling;
  FixedSupportConfig fixed_support;
  int repetitions = 5;
  std::uint64_t base_seed = 0;
  Eigen::Vector2d start = Eigen::Vector2d(0.5, 0.5);
  Eigen::Vector2d goal = Eigen::Vector2d(9.5, 9.5);
  std::string output_dir = ".";

  /// Checks counts and that referenced input files exist.
  void validate() const;
};

void from_json(const nlohmann::json& j, ExperimentConfig& config);
void to_json(nlohmann::json& j, const ExperimentConfig& config);
ExperimentConfig load_experiment_config_file(const std::string& path);

struct RunRecord {
  PlannerKind planner = PlannerKind::kSfgmp;
  int repetition = 0;
  std::uint64_t seed = 0;
  /// False when the planner produced no path (an exception was thrown).
  bool success = false;
  /// "converged" or "stalled-unsafe" (sfgmp), "path-found" (rrt*, prm*),
  /// "safe" or "unsafe" (fixed-support), "failed" when no path was produced.
  std::string status;
  double max_occupancy = 0.0;
  double path_length = 0.0;
  double wall_seconds = 0.0;
  std::string error;
};

/// Mean and sample standard deviation over successful runs (std is 0 for a
/// single run). Failed runs are counted but excluded from the statistics.
struct PlannerSummary {
  PlannerKind planner = PlannerKind::kSfgmp;
  int runs = 0;
  int failures = 0;
  double mean_max_occupancy = 0.0;
  double std_max_occupancy = 0.0;
  double mean_path_length = 0.0;
  double std_path_length = 0.0;
  double mean_wall_seconds = 0.0;

  bool failed() const { return runs > 0 && failures == runs; }
};

PlannerSummary summarize(PlannerKind planner, const std::vector<RunRecord>& runs);

struct ComparisonReport {
  std::vector<RunRecord> runs;
  std::vector<PlannerSummary> summaries;
};

/// Recomputes one summary per planner, in first-appearance order.
std::vector<PlannerSummary> summarize_all(const std::vector<RunRecord>& runs);

/// Runs one planner once. The seed overrides the planner config's own seed.
RunRecord run_planner(PlannerKind planner, const OccupancyModel& map, const ExperimentConfig& config,
                      int repetition, std::uint64_t seed);

using RunObserver = std::function<void(const RunRecord&)>;

/// Runs every selected planner `repetitions` times with seeds base_seed + i.
/// Throws std::invalid_argument for fewer than two planners.
ComparisonReport run_comparison(const OccupancyModel& map, const ExperimentConfig& config,
                                const RunObserver& observer = {});

/// Raw rows: "planner,repetition,seed,success,status,max_occupancy,path_length,wall_seconds,error".
void write_runs_csv(const std::vector<RunRecord>& runs, std::ostream& out);
std::vector<RunRecord> read_runs_csv(std::istream& in);

/// Aggregates: "planner,runs,failures,mean_max_occupancy,std_max_occupancy,
/// mean_path_length,std_path_length,mean_wall_seconds".
void write_summary_csv(const std::vector<PlannerSummary>& summaries, std::ostream& out);
std::vector<PlannerSummary> read_summary_csv(std::istream& in);

/// Human-readable table with one row per planner and the two metric columns.
void write_summary_table(const std::vector<PlannerSummary>& summaries, std::ostream& out);

}  // namespace hmp
