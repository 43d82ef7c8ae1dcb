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

#include "hmp/path_io.hpp"

#include <fstream>

#include <json.hpp>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

void save_path(const GpPath& path, int grid_size, std::ostream& out) {
  nlohmann::json j;
  j["format"] = "hmp-gp-path";
  j["version"] = 1;
  j["dim"] = path.dim();
  const TimeKernel& k = path.kernel();
  j["kernel"] = {{"lengthscale", k.lengthscale},
                 {"signal_variance", k.signal_variance},
                 {"jitter", k.jitter}};
  j["dedup_tolerance"] = path.dedup_tolerance();

  const Curve& base = path.mean().base();
  nlohmann::json anchors = nlohmann::json::array();
  for (const auto& a : base.anchors) anchors.push_back(to_std(a));
  j["base"] = {{"kind", base.kind}, {"anchors", anchors}};

  nlohmann::json coeffs = nlohmann::json::array();
  const Eigen::MatrixXd& c = path.mean().coefficients();
  for (Eigen::Index i = 0; i < c.rows(); ++i) coeffs.push_back(to_std(c.row(i).transpose()));
  j["expansion"] = {{"centers", path.mean().centers()}, {"coefficients", coeffs}};

  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : path.observations()) {
    obs.push_back({{"t", o.t},
                   {"state", to_std(o.state)},
                   {"kind", o.kind == ObservationKind::kBoundary ? "boundary" : "support"}});
  }
  j["observations"] = std::move(obs);

  nlohmann::json grid = nlohmann::json::array();
  if (grid_size >= 2) {
    for (int i = 0; i < grid_size; ++i) {
      const double t = static_cast<double>(i) / (grid_size - 1);
      grid.push_back({{"t", t}, {"state", to_std(path.query(t))}});
    }
  }
  j["grid"] = std::move(grid);
  out << j.dump(1) << '\n';
}

GpPath load_path(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format").get<std::string>() != "hmp-gp-path") throw FormatError("not a GP path");
    const int dim = j.at("dim").get<int>();
    TimeKernel k;
    k.lengthscale = j.at("kernel").at("lengthscale").get<double>();
    k.signal_variance = j.at("kernel").at("signal_variance").get<double>();
    k.jitter = j.at("kernel").at("jitter").get<double>();

    const auto kind = j.at("base").at("kind").get<std::string>();
    const auto anchors = j.at("base").at("anchors").get<std::vector<std::vector<double>>>();
    Curve base;
    if (kind == "straight_line" && anchors.size() == 2) {
      base = Curve::straight_line(to_eigen(anchors[0]), to_eigen(anchors[1]));
    } else if (kind == "constant" && anchors.size() == 1) {
      base = Curve::constant(to_eigen(anchors[0]));
    } else {
      throw FormatError("GP path base of kind '" + kind + "' cannot be reconstructed");
    }
    if (base.dim != dim) throw FormatError("GP path base dimension mismatch");

    PathMean mean(std::move(base), k);
    const auto centers = j.at("expansion").at("centers").get<std::vector<double>>();
    const auto rows = j.at("expansion").at("coefficients").get<std::vector<std::vector<double>>>();
    if (rows.size() != centers.size()) throw FormatError("GP path expansion size mismatch");
    Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != dim) throw FormatError("coefficient row size");
      coeffs.row(static_cast<Eigen::Index>(i)) = to_eigen(rows[i]).transpose();
    }
    mean.add_terms(centers, coeffs);

    GpPath path(std::move(mean), k, j.at("dedup_tolerance").get<double>());
    for (const auto& o : j.at("observations")) {
      const auto okind = o.at("kind").get<std::string>() == "boundary"
                             ? ObservationKind::kBoundary
                             : ObservationKind::kSupport;
      path.add_observation(o.at("t").get<double>(), to_eigen(o.at("state").get<std::vector<double>>()),
                           okind);
    }
    return path;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("GP path: ") + e.what());
  }
}

void save_path_file(const GpPath& path, int grid_size, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file);
  save_path(path, grid_size, out);
}

GpPath load_path_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot read " + file);
  return load_path(in);
}

}  // namespace hmp
