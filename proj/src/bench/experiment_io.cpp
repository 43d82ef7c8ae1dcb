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

#include <fstream>
#include <set>
#include <string>

#include "hmp/errors.hpp"
#include "hmp/experiment.hpp"
#include "hmp/planner_io.hpp"

namespace hmp {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& what) {
  if (!j.is_object()) throw FormatError(what + " config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw FormatError(what + " config: unknown key '" + item.key() + "'");
  }
}

json point(const Eigen::Vector2d& p) { return json::array({p.x(), p.y()}); }

Eigen::Vector2d read_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw FormatError(what + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json bounds_json(const Bounds& b) { return {{"min", point(b.min)}, {"max", point(b.max)}}; }

Bounds read_bounds(const json& j, const std::string& what) {
  reject_unknown(j, {"min", "max"}, what);
  return {read_point(j.at("min"), what + ".min"), read_point(j.at("max"), what + ".max")};
}

void read_generator(const json& j, WorldGenConfig& g) {
  reject_unknown(j,
                 {"num_obstacles", "bounds", "min_size", "max_size", "start", "goal",
                  "endpoint_clearance", "max_rejections"},
                 "generator");
  g.num_obstacles = j.value("num_obstacles", g.num_obstacles);
  if (j.contains("bounds")) g.bounds = read_bounds(j["bounds"], "generator.bounds");
  g.min_size = j.value("min_size", g.min_size);
  g.max_size = j.value("max_size", g.max_size);
  if (j.contains("start")) g.start = read_point(j["start"], "generator.start");
  if (j.contains("goal")) g.goal = read_point(j["goal"], "generator.goal");
  g.endpoint_clearance = j.value("endpoint_clearance", g.endpoint_clearance);
  g.max_rejections = j.value("max_rejections", g.max_rejections);
}

json generator_json(const WorldGenConfig& g) {
  return {{"num_obstacles", g.num_obstacles}, {"bounds", bounds_json(g.bounds)},
          {"min_size", g.min_size},           {"max_size", g.max_size},
          {"start", point(g.start)},          {"goal", point(g.goal)},
          {"endpoint_clearance", g.endpoint_clearance},
          {"max_rejections", g.max_rejections}};
}

void read_world(const json& j, WorldSpec& w) {
  reject_unknown(j, {"source", "seed", "generator", "path"}, "world");
  if (j.contains("source")) {
    try {
      w.source = world_source_from_string(j["source"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  w.seed = j.value("seed", w.seed);
  if (j.contains("generator")) read_generator(j["generator"], w.generator);
  w.path = j.value("path", w.path);
}

void read_raycast(const json& j, RaycastConfig& r) {
  reject_unknown(j, {"free_spacing", "max_range", "free_jitter", "seed"}, "raycast");
  r.free_spacing = j.value("free_spacing", r.free_spacing);
  r.max_range = j.value("max_range", r.max_range);
  r.free_jitter = j.value("free_jitter", r.free_jitter);
  r.seed = j.value("seed", r.seed);
}

void read_map(const json& j, MapConfig& m) {
  reject_unknown(j,
                 {"gamma", "num_features", "feature_seed", "boundary_density", "free_density",
                  "data_seed", "train", "raycast"},
                 "map");
  m.gamma = j.value("gamma", m.gamma);
  m.num_features = j.value("num_features", m.num_features);
  m.feature_seed = j.value("feature_seed", m.feature_seed);
  m.boundary_density = j.value("boundary_density", m.boundary_density);
  m.free_density = j.value("free_density", m.free_density);
  m.data_seed = j.value("data_seed", m.data_seed);
  if (j.contains("train")) from_json(j["train"], m.train);
  if (j.contains("raycast")) read_raycast(j["raycast"], m.raycast);
}

void read_sampling(const json& j, SamplingConfig& s) {
  reject_unknown(j, {"step", "samples", "seed", "p_safe", "edge_spacing", "goal_bias", "bounds"},
                 "sampling");
  s.step = j.value("step", s.step);
  s.samples = j.value("samples", s.samples);
  s.seed = j.value("seed", s.seed);
  s.p_safe = j.value("p_safe", s.p_safe);
  s.edge_spacing = j.value("edge_spacing", s.edge_spacing);
  s.goal_bias = j.value("goal_bias", s.goal_bias);
  if (j.contains("bounds")) s.bounds = read_bounds(j["bounds"], "sampling.bounds");
}

void read_fixed_support(const json& j, FixedSupportConfig& f) {
  reject_unknown(j, {"support_size", "beta", "metric", "lambda", "iterations", "tolerance"},
                 "fixed_support");
  f.support_size = j.value("support_size", f.support_size);
  f.beta = j.value("beta", f.beta);
  f.lambda = j.value("lambda", f.lambda);
  f.iterations = j.value("iterations", f.iterations);
  f.tolerance = j.value("tolerance", f.tolerance);
  if (j.contains("metric")) {
    const auto rows = j["metric"].get<std::vector<std::vector<double>>>();
    f.metric.resize(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != f.metric.cols()) {
        throw FormatError("fixed_support config: ragged metric");
      }
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        f.metric(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
    }
  }
}

}  // namespace

void from_json(const json& j, ExperimentConfig& c) {
  reject_unknown(j,
                 {"world", "map", "planners", "sfgmp", "sampling", "fixed_support", "repetitions",
                  "base_seed", "start", "goal", "output_dir"},
                 "experiment");
  if (j.contains("world")) read_world(j["world"], c.world);
  if (j.contains("map")) read_map(j["map"], c.map);
  if (j.contains("planners")) {
    c.planners.clear();
    for (const auto& name : j["planners"]) {
      try {
        c.planners.push_back(planner_from_string(name.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
    }
  }
  if (j.contains("sfgmp")) from_json(j["sfgmp"], c.sfgmp);
  if (j.contains("sampling")) read_sampling(j["sampling"], c.sampling);
  if (j.contains("fixed_support")) read_fixed_support(j["fixed_support"], c.fixed_support);
  c.repetitions = j.value("repetitions", c.repetitions);
  c.base_seed = j.value("base_seed", c.base_seed);
  if (j.contains("start")) c.start = read_point(j["start"], "start");
  if (j.contains("goal")) c.goal = read_point(j["goal"], "goal");
  c.output_dir = j.value("output_dir", c.output_dir);
}

void to_json(json& j, const ExperimentConfig& c) {
  json planners = json::array();
  for (PlannerKind p : c.planners) planners.push_back(to_string(p));
  json metric = json::array();
  for (Eigen::Index r = 0; r < c.fixed_support.metric.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < c.fixed_support.metric.cols(); ++k) {
      row.push_back(c.fixed_support.metric(r, k));
    }
    metric.push_back(row);
  }
  json fixed = {{"support_size", c.fixed_support.support_size},
                {"beta", c.fixed_support.beta},
                {"lambda", c.fixed_support.lambda},
                {"iterations", c.fixed_support.iterations},
                {"tolerance", c.fixed_support.tolerance}};
  if (!metric.empty()) fixed["metric"] = metric;
  j = {{"world",
        {{"source", to_string(c.world.source)},
         {"seed", c.world.seed},
         {"generator", generator_json(c.world.generator)},
         {"path", c.world.path}}},
       {"map",
        {{"gamma", c.map.gamma},
         {"num_features", c.map.num_features},
         {"feature_seed", c.map.feature_seed},
         {"boundary_density", c.map.boundary_density},
         {"free_density", c.map.free_density},
         {"data_seed", c.map.data_seed},
         {"train", c.map.train},
         {"raycast",
          {{"free_spacing", c.map.raycast.free_spacing},
           {"max_range", c.map.raycast.max_range},
           {"free_jitter", c.map.raycast.free_jitter},
           {"seed", c.map.raycast.seed}}}}},
       {"planners", planners},
       {"sfgmp", c.sfgmp},
       {"sampling",
        {{"step", c.sampling.step},
         {"samples", c.sampling.samples},
         {"seed", c.sampling.seed},
         {"p_safe", c.sampling.p_safe},
         {"edge_spacing", c.sampling.edge_spacing},
         {"goal_bias", c.sampling.goal_bias},
         {"bounds", bounds_json(c.sampling.bounds)}}},
       {"fixed_support", fixed},
       {"repetitions", c.repetitions},
       {"base_seed", c.base_seed},
       {"start", point(c.start)},
       {"goal", point(c.goal)},
       {"output_dir", c.output_dir}};
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("config '" + path + "': " + e.what());
  }
  ExperimentConfig config;
  try {
    from_json(j, config);
  } catch (const json::exception& e) {
    throw FormatError("config '" + path + "': " + e.what());
  }
  return config;
}

}  // namespace hmp
