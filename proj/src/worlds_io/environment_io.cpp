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
#include <string>

#include <json.hpp>

#include "hmp/dataset_io.hpp"
#include "hmp/errors.hpp"

namespace hmp {

namespace {

using nlohmann::json;

json point(const Eigen::Vector2d& p) { return json::array({p.x(), p.y()}); }

Eigen::Vector2d read_point(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw FormatError("expected a 2-d point");
  return {v[0], v[1]};
}

struct ObstacleToJson {
  json operator()(const Circle& c) const {
    return {{"kind", "circle"}, {"center", point(c.center)}, {"radius", c.radius}};
  }
  json operator()(const Rectangle& r) const {
    return {{"kind", "rectangle"}, {"corner", point(r.corner)}, {"extents", point(r.extents)}};
  }
  json operator()(const Polygon& p) const {
    json verts = json::array();
    for (const auto& v : p.vertices) verts.push_back(point(v));
    return {{"kind", "polygon"}, {"vertices", verts}};
  }
};

Obstacle obstacle_from_json(const json& j, std::size_t index) {
  const auto kind = j.at("kind").get<std::string>();
  const std::string where = "obstacle " + std::to_string(index);
  if (kind == "circle") {
    Circle c{read_point(j.at("center")), j.at("radius").get<double>()};
    if (!(c.radius > 0.0)) throw FormatError(where + ": radius must be positive");
    return c;
  }
  if (kind == "rectangle") {
    Rectangle r{read_point(j.at("corner")), read_point(j.at("extents"))};
    if (!(r.extents.array() > 0.0).all()) throw FormatError(where + ": extents must be positive");
    return r;
  }
  if (kind == "polygon") {
    Polygon p;
    for (const auto& v : j.at("vertices")) p.vertices.push_back(read_point(v));
    if (!is_simple(p)) throw FormatError(where + ": polygon is not simple");
    return p;
  }
  throw FormatError(where + ": unknown kind '" + kind + "'");
}

}  // namespace

void save_environment(const Environment& env, std::ostream& out) {
  json j;
  j["bounds"] = {{"min", point(env.bounds.min)}, {"max", point(env.bounds.max)}};
  json obstacles = json::array();
  for (const auto& o : env.obstacles) obstacles.push_back(std::visit(ObstacleToJson{}, o));
  j["obstacles"] = std::move(obstacles);
  out << j.dump(1) << '\n';
}

Environment load_environment(std::istream& in) {
  try {
    json j;
    in >> j;
    Environment env;
    env.bounds.min = read_point(j.at("bounds").at("min"));
    env.bounds.max = read_point(j.at("bounds").at("max"));
    if (!env.bounds.valid()) throw FormatError("environment bounds: min must be below max");
    std::size_t index = 0;
    for (const auto& o : j.at("obstacles")) {
      Obstacle obstacle = obstacle_from_json(o, index);
      const Bounds box = bounding_box(obstacle);
      if (!env.bounds.contains(box.min) || !env.bounds.contains(box.max)) {
        throw FormatError("obstacle " + std::to_string(index) + " leaves the bounds");
      }
      env.obstacles.push_back(std::move(obstacle));
      ++index;
    }
    return env;
  } catch (const json::exception& e) {
    throw FormatError(std::string("environment: ") + e.what());
  }
}

void save_environment_file(const Environment& env, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_environment(env, out);
}

Environment load_environment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return load_environment(in);
}

}  // namespace hmp
