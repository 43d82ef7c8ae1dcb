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

// Command-line harness: world generation, map building, planning and
// planner comparison. Exit codes: 0 success, 1 internal error, 2 input error,
// 3 planner stalled above p_safe, 4 infeasible endpoints.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmp/dataset_io.hpp"
#include "hmp/errors.hpp"
#include "hmp/experiment.hpp"
#include "hmp/model_io.hpp"
#include "hmp/path_io.hpp"
#include "hmp/planner_io.hpp"
#include "hmp/world_gen.hpp"

namespace {

using hmp::ExperimentConfig;

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitStalled = 3;
constexpr int kExitInfeasible = 4;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string config;
};

ExperimentConfig load_config(const GlobalOptions& g) {
  ExperimentConfig config =
      g.config.empty() ? ExperimentConfig{} : hmp::load_experiment_config_file(g.config);
  if (!g.out_dir.empty()) config.output_dir = g.out_dir;
  return config;
}

std::uint64_t resolve_seed(const GlobalOptions& g) {
  if (g.seed) return *g.seed;
  std::random_device device;
  const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) | device();
  std::cout << "seed: " << seed << '\n';
  return seed;
}

std::filesystem::path output_path(const ExperimentConfig& config, const std::string& name) {
  const std::filesystem::path dir(config.output_dir.empty() ? "." : config.output_dir);
  std::filesystem::create_directories(dir);
  return dir / name;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out);
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

Eigen::Vector2d to_point(const std::vector<double>& v) { return {v[0], v[1]}; }

// ---------------------------------------------------------------- world-gen

struct WorldGenOptions {
  std::optional<int> obstacles;
  std::vector<double> bounds;
  std::optional<double> min_size;
  std::optional<double> max_size;
  std::optional<double> boundary_density;
  std::optional<double> free_density;
};

int cmd_world_gen(const GlobalOptions& g, const WorldGenOptions& o) {
  ExperimentConfig config = load_config(g);
  hmp::WorldGenConfig& gen = config.world.generator;
  if (o.obstacles) gen.num_obstacles = *o.obstacles;
  if (!o.bounds.empty()) {
    gen.bounds = {{o.bounds[0], o.bounds[1]}, {o.bounds[2], o.bounds[3]}};
  }
  if (o.min_size) gen.min_size = *o.min_size;
  if (o.max_size) gen.max_size = *o.max_size;
  if (o.boundary_density) config.map.boundary_density = *o.boundary_density;
  if (o.free_density) config.map.free_density = *o.free_density;
  const std::uint64_t seed = resolve_seed(g);

  const hmp::Environment env = hmp::generate_random_world(seed, gen);
  const hmp::LabeledPointCloud data = hmp::synthesize_observations(
      env, config.map.boundary_density, config.map.free_density, seed);

  const auto world_file = output_path(config, "world.json");
  const auto data_file = output_path(config, "dataset.csv");
  hmp::save_environment_file(env, world_file.string());
  hmp::save_dataset_file(data, data_file.string());
  std::cout << "obstacles: " << env.obstacles.size() << '\n'
            << "samples: " << data.size() << " (occupied " << data.count(1) << ", free "
            << data.count(-1) << ")\n"
            << "wrote " << world_file.string() << '\n'
            << "wrote " << data_file.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- map-build

struct MapBuildOptions {
  std::string dataset;
  std::string environment;
  std::string carmen;
  std::optional<double> gamma;
  std::optional<int> features;
  std::optional<int> epochs;
  double resolution = 0.1;
};

void apply_world_source(ExperimentConfig& config, const std::string& dataset,
                        const std::string& environment, const std::string& carmen) {
  if (!dataset.empty()) {
    config.world.source = hmp::WorldSource::kDatasetFile;
    config.world.path = dataset;
  } else if (!environment.empty()) {
    config.world.source = hmp::WorldSource::kEnvironmentFile;
    config.world.path = environment;
  } else if (!carmen.empty()) {
    config.world.source = hmp::WorldSource::kCarmenLog;
    config.world.path = carmen;
  }
}

int cmd_map_build(const GlobalOptions& g, const MapBuildOptions& o) {
  ExperimentConfig config = load_config(g);
  apply_world_source(config, o.dataset, o.environment, o.carmen);
  if (o.gamma) config.map.gamma = *o.gamma;
  if (o.features) config.map.num_features = *o.features;
  if (o.epochs) config.map.train.epochs = *o.epochs;
  if (!(o.resolution > 0.0)) throw std::invalid_argument("--resolution must be positive");
  const std::uint64_t seed = resolve_seed(g);
  config.map.feature_seed = seed;
  config.map.data_seed = seed;
  config.map.train.seed = seed;
  if (config.world.source == hmp::WorldSource::kGenerated) config.world.seed = seed;
  config.validate();

  std::optional<hmp::Environment> env;
  const hmp::LabeledPointCloud data = hmp::build_dataset(config.world, config.map, &env);
  if (data.empty()) throw std::invalid_argument("map-build: the world produced no samples");
  const std::size_t occupied = data.count(1);
  const std::size_t free = data.count(-1);
  if (occupied == 0 || free == 0) {
    std::cerr << "warning: dataset has only " << (occupied == 0 ? "free" : "occupied")
              << " labels; the trained map is degenerate\n";
  }
  const int dim = static_cast<int>(data.samples.front().position.size());
  const hmp::OccupancyModel model = hmp::train(
      data,
      hmp::FeatureMap::random(config.map.gamma, config.map.num_features, dim,
                              config.map.feature_seed),
      config.map.train);

  const auto model_file = output_path(config, "model.json");
  const auto grid_file = output_path(config, "occupancy_grid.csv");
  hmp::save_model_file(model, model_file.string());
  const hmp::Bounds bounds = env ? env->bounds : hmp::data_bounds(data, 0.5);
  write_file(grid_file, [&](std::ostream& out) {
    hmp::write_occupancy_grid_csv(model, bounds, o.resolution, out);
  });

  std::cout << "samples: " << data.size() << " (occupied " << occupied << ", free " << free
            << ")\n"
            << "training accuracy: " << hmp::training_accuracy(model, data) << '\n'
            << "training nll: "
            << hmp::regularised_nll(model, data, config.map.train.l1, config.map.train.l2) << '\n'
            << "wrote " << model_file.string() << '\n'
            << "wrote " << grid_file.string() << '\n';
  return 0;
}

// --------------------------------------------------------------------- plan

struct PlanOptions {
  std::string model;
  std::vector<double> start;
  std::vector<double> goal;
  std::optional<double> lambda;
  std::optional<double> eta0;
  std::optional<int> batch;
  std::optional<int> iterations;
  std::optional<double> p_safe;
  int grid = 100;
};

int cmd_plan(const GlobalOptions& g, const PlanOptions& o) {
  ExperimentConfig config = load_config(g);
  hmp::PlannerConfig& pc = config.sfgmp;
  if (o.lambda) pc.lambda = *o.lambda;
  if (o.eta0) pc.eta0 = *o.eta0;
  if (o.batch) pc.minibatch_size = *o.batch;
  if (o.iterations) pc.max_iterations = *o.iterations;
  if (o.p_safe) pc.p_safe = *o.p_safe;
  if (!o.start.empty()) config.start = to_point(o.start);
  if (!o.goal.empty()) config.goal = to_point(o.goal);
  if (o.grid < 2) throw std::invalid_argument("--grid must be at least 2");
  pc.seed = resolve_seed(g);
  pc.validate(2);

  const hmp::OccupancyModel model = hmp::load_model_file(o.model);
  if (model.dim() != 2) throw std::invalid_argument("plan: expected a 2-d occupancy model");
  const hmp::PlanResult result =
      hmp::plan(model, hmp::RobotModel::point_robot(2), config.start, config.goal, pc);

  const auto path_file = output_path(config, "path.json");
  const auto trace_file = output_path(config, "trace.csv");
  hmp::save_path_file(result.path, o.grid, path_file.string());
  write_file(trace_file, [&](std::ostream& out) { hmp::write_trace_csv(result.trace, out); });

  std::cout << "status: " << hmp::to_string(result.status) << '\n'
            << "iterations: " << result.trace.size() << '\n'
            << "initial max occupancy: " << result.initial_max_occupancy << '\n'
            << "final max occupancy: " << result.final_max_occupancy << '\n'
            << "path length: " << result.path_length << '\n'
            << "wrote " << path_file.string() << '\n'
            << "wrote " << trace_file.string() << '\n';
  return result.status == hmp::PlanStatus::kConverged ? 0 : kExitStalled;
}

// ------------------------------------------------------------------ compare

struct CompareOptions {
  std::string model;
  std::string dataset;
  std::string environment;
  std::string carmen;
  std::vector<std::string> planners;
  std::optional<int> repetitions;
  std::vector<double> start;
  std::vector<double> goal;
};

int cmd_compare(const GlobalOptions& g, const CompareOptions& o) {
  ExperimentConfig config = load_config(g);
  apply_world_source(config, o.dataset, o.environment, o.carmen);
  if (!o.planners.empty()) {
    config.planners.clear();
    for (const auto& name : o.planners) config.planners.push_back(hmp::planner_from_string(name));
  }
  if (o.repetitions) config.repetitions = *o.repetitions;
  if (!o.start.empty()) config.start = to_point(o.start);
  if (!o.goal.empty()) config.goal = to_point(o.goal);
  if (config.planners.size() < 2) throw std::invalid_argument("compare: select at least two planners");
  config.base_seed = resolve_seed(g);
  config.validate();

  const hmp::OccupancyModel model = o.model.empty()
                                        ? hmp::build_map(config.world, config.map).model
                                        : hmp::load_model_file(o.model);
  const hmp::ComparisonReport report =
      hmp::run_comparison(model, config, [](const hmp::RunRecord& r) {
        std::cerr << hmp::to_string(r.planner) << " rep " << r.repetition << " seed " << r.seed
                  << ": " << r.status << '\n';
      });

  const auto runs_file = output_path(config, "runs.csv");
  const auto summary_file = output_path(config, "summary.csv");
  write_file(runs_file, [&](std::ostream& out) { hmp::write_runs_csv(report.runs, out); });
  write_file(summary_file,
             [&](std::ostream& out) { hmp::write_summary_csv(report.summaries, out); });

  hmp::write_summary_table(report.summaries, std::cout);
  for (const auto& s : report.summaries) {
    if (s.failed()) {
      std::cerr << "warning: every repetition of " << hmp::to_string(s.planner) << " failed\n";
    }
  }
  std::cout << "wrote " << runs_file.string() << '\n' << "wrote " << summary_file.string() << '\n';
  return 0;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const hmp::InfeasibleEndpoints& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const hmp::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const hmp::ParseFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const hmp::PlacementFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-map motion planning toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Run seed; drawn at random and printed when omitted");
  app.add_option("--out-dir", global.out_dir, "Directory for output files");
  app.add_option("--config", global.config, "Experiment config JSON; flags override it")
      ->check(CLI::ExistingFile);

  WorldGenOptions wg;
  auto* world_gen = app.add_subcommand("world-gen", "Generate a random world and its dataset");
  world_gen->add_option("--obstacles", wg.obstacles, "Number of obstacles");
  world_gen->add_option("--bounds", wg.bounds, "xmin ymin xmax ymax")->expected(4);
  world_gen->add_option("--min-size", wg.min_size, "Smallest obstacle radius or half-extent");
  world_gen->add_option("--max-size", wg.max_size, "Largest obstacle radius or half-extent");
  world_gen->add_option("--boundary-density", wg.boundary_density,
                        "Occupied samples per meter of boundary");
  world_gen->add_option("--free-density", wg.free_density, "Free samples per square meter");

  MapBuildOptions mb;
  auto* map_build = app.add_subcommand("map-build", "Train an occupancy map");
  auto* mb_dataset =
      map_build->add_option("--dataset", mb.dataset, "Labeled dataset CSV")->check(CLI::ExistingFile);
  auto* mb_env = map_build->add_option("--environment", mb.environment, "Environment JSON")
                     ->check(CLI::ExistingFile);
  auto* mb_carmen =
      map_build->add_option("--carmen", mb.carmen, "CARMEN log")->check(CLI::ExistingFile);
  mb_dataset->excludes(mb_env)->excludes(mb_carmen);
  mb_env->excludes(mb_carmen);
  map_build->add_option("--gamma", mb.gamma, "RBF kernel width");
  map_build->add_option("--features", mb.features, "Number of random features");
  map_build->add_option("--epochs", mb.epochs, "SGD epochs");
  map_build->add_option("--resolution", mb.resolution, "Occupancy grid cell size")
      ->capture_default_str();

  PlanOptions pl;
  auto* plan = app.add_subcommand("plan", "Plan a path on a trained map");
  plan->add_option("--model", pl.model, "Model JSON from map-build")
      ->required()
      ->check(CLI::ExistingFile);
  plan->add_option("--start", pl.start, "Start x y")->expected(2);
  plan->add_option("--goal", pl.goal, "Goal x y")->expected(2);
  plan->add_option("--lambda", pl.lambda, "Smoothness weight");
  plan->add_option("--eta0", pl.eta0, "Initial step size");
  plan->add_option("--batch", pl.batch, "Minibatch size");
  plan->add_option("--iterations", pl.iterations, "Iteration cap");
  plan->add_option("--p-safe", pl.p_safe, "Occupancy threshold for updates and success");
  plan->add_option("--grid", pl.grid, "Grid size of the exported path")->capture_default_str();

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Compare planners over repeated runs");
  auto* cmp_model = compare->add_option("--model", cmp.model, "Model JSON; built from the world when omitted")
                        ->check(CLI::ExistingFile);
  auto* cmp_dataset = compare->add_option("--dataset", cmp.dataset, "Labeled dataset CSV")
                          ->check(CLI::ExistingFile);
  auto* cmp_env = compare->add_option("--environment", cmp.environment, "Environment JSON")
                      ->check(CLI::ExistingFile);
  auto* cmp_carmen =
      compare->add_option("--carmen", cmp.carmen, "CARMEN log")->check(CLI::ExistingFile);
  cmp_model->excludes(cmp_dataset)->excludes(cmp_env)->excludes(cmp_carmen);
  cmp_dataset->excludes(cmp_env)->excludes(cmp_carmen);
  cmp_env->excludes(cmp_carmen);
  compare->add_option("--planners", cmp.planners, "sfgmp, rrt*, prm*, fixed-support");
  compare->add_option("--repetitions", cmp.repetitions, "Runs per planner");
  compare->add_option("--start", cmp.start, "Start x y")->expected(2);
  compare->add_option("--goal", cmp.goal, "Goal x y")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*world_gen) return guarded([&] { return cmd_world_gen(global, wg); });
  if (*map_build) return guarded([&] { return cmd_map_build(global, mb); });
  if (*plan) return guarded([&] { return cmd_plan(global, pl); });
  return guarded([&] { return cmd_compare(global, cmp); });
}
