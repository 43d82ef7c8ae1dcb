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

#include "hmp/model_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

constexpr const char* kFormat = "hmp-occupancy-model";
constexpr int kVersion = 1;

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

void save_model(const OccupancyModel& model, std::ostream& out) {
  const FeatureMap& fm = model.feature_map();
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["gamma"] = fm.gamma();
  j["seed"] = fm.seed();
  j["num_features"] = fm.num_features();
  j["dim"] = fm.dim();
  j["feature_form"] = model.meta().feature_form;
  nlohmann::json freqs = nlohmann::json::array();
  for (int r = 0; r < fm.num_features(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(fm.dim()));
    for (int c = 0; c < fm.dim(); ++c) row[static_cast<std::size_t>(c)] = fm.frequencies()(r, c);
    freqs.push_back(row);
  }
  j["frequencies"] = std::move(freqs);
  j["phases"] = to_std(fm.phases());
  j["weights"] = to_std(model.weights());
  const TrainingMeta& meta = model.meta();
  j["training"] = {{"epochs", meta.epochs},
                   {"l1", meta.l1},
                   {"l2", meta.l2},
                   {"final_nll", meta.final_nll},
                   {"epoch_nll", meta.epoch_nll}};
  out << j.dump(1) << '\n';
}

OccupancyModel load_model(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) throw FormatError("not a model snapshot");
    if (j.at("version").get<int>() != kVersion) throw FormatError("unsupported model version");
    const int m = j.at("num_features").get<int>();
    const int dim = j.at("dim").get<int>();
    const auto& freqs = j.at("frequencies");
    const auto phases = j.at("phases").get<std::vector<double>>();
    const auto weights = j.at("weights").get<std::vector<double>>();
    if (m < 1 || dim < 1 || static_cast<int>(freqs.size()) != m ||
        static_cast<int>(phases.size()) != m || static_cast<int>(weights.size()) != m) {
      throw FormatError("model snapshot has inconsistent sizes");
    }
    Eigen::MatrixXd f(m, dim);
    for (int r = 0; r < m; ++r) {
      const auto row = freqs[static_cast<std::size_t>(r)].get<std::vector<double>>();
      if (static_cast<int>(row.size()) != dim) throw FormatError("frequency row has wrong size");
      for (int c = 0; c < dim; ++c) f(r, c) = row[static_cast<std::size_t>(c)];
    }
    FeatureMap fm(j.at("gamma").get<double>(), std::move(f),
                  Eigen::Map<const Eigen::VectorXd>(phases.data(), m),
                  j.at("seed").get<std::uint64_t>());
    TrainingMeta meta;
    if (j.contains("feature_form")) meta.feature_form = j["feature_form"].get<std::string>();
    if (j.contains("training")) {
      const auto& t = j["training"];
      meta.epochs = t.value("epochs", 0);
      meta.l1 = t.value("l1", 0.0);
      meta.l2 = t.value("l2", 0.0);
      meta.final_nll = t.value("final_nll", 0.0);
      meta.epoch_nll = t.value("epoch_nll", std::vector<double>{});
    }
    return OccupancyModel(std::move(fm), Eigen::Map<const Eigen::VectorXd>(weights.data(), m),
                          std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model snapshot: ") + e.what());
  }
}

void save_model_file(const OccupancyModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_model(model, out);
}

OccupancyModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return load_model(in);
}

}  // namespace hmp
