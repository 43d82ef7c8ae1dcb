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

#include "hmp/occupancy_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "hmp/errors.hpp"

namespace hmp {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

OccupancyModel::OccupancyModel(FeatureMap feature_map, Eigen::VectorXd weights, TrainingMeta meta)
    : feature_map_(std::move(feature_map)), weights_(std::move(weights)), meta_(std::move(meta)) {
  if (weights_.size() != feature_map_.num_features()) {
    throw std::invalid_argument("occupancy model: weights length must equal num_features");
  }
  if (!weights_.allFinite()) throw NumericFailure("occupancy model: non-finite weights");
}

OccupancyModel OccupancyModel::uninformed(FeatureMap feature_map) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(feature_map.num_features());
  return OccupancyModel(std::move(feature_map), std::move(w));
}

double OccupancyModel::score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return weights_.dot(feature_map_.features(x));
}

double OccupancyModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return sigmoid(score(x));
}

Eigen::VectorXd OccupancyModel::gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::MatrixXd jac = feature_map_.jacobian(x);
  const double p = sigmoid(weights_.dot(feature_map_.features(x)));
  return p * (1.0 - p) * (jac.transpose() * weights_);
}

namespace {

constexpr double kProbClamp = 1e-12;

double sample_loss(double z, int label) {
  const double p = std::clamp(sigmoid(label * z), kProbClamp, 1.0 - kProbClamp);
  return -std::log(p);
}

double penalty(const Eigen::VectorXd& w, double l1, double l2) {
  return l1 * w.lpNorm<1>() + 0.5 * l2 * w.squaredNorm();
}

void check_labels(const LabeledPointCloud& data, int dim) {
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const auto& s = data.samples[i];
    if (s.label != 1 && s.label != -1) {
      throw std::invalid_argument("train: sample " + std::to_string(i) + " has label " +
                                  std::to_string(s.label) + ", expected -1 or +1");
    }
    if (s.position.size() != dim) {
      throw std::invalid_argument("train: sample " + std::to_string(i) + " has wrong dimension");
    }
    if (!s.position.allFinite()) {
      throw std::invalid_argument("train: sample " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

double regularised_nll(const OccupancyModel& model, const LabeledPointCloud& data, double l1,
                       double l2) {
  double total = 0.0;
  for (const auto& s : data.samples) total += sample_loss(model.score(s.position), s.label);
  const double mean = data.empty() ? 0.0 : total / static_cast<double>(data.size());
  return mean + penalty(model.weights(), l1, l2);
}

double training_accuracy(const OccupancyModel& model, const LabeledPointCloud& data) {
  if (data.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& s : data.samples) {
    const int predicted = model.predict(s.position) > 0.5 ? 1 : -1;
    correct += (predicted == s.label);
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

OccupancyModel train(const LabeledPointCloud& data, FeatureMap feature_map,
                     const TrainConfig& config) {
  if (data.empty()) throw std::invalid_argument("train: empty dataset");
  if (!(config.step_size > 0.0)) throw std::invalid_argument("train: step size must be positive");
  if (config.epochs < 0) throw std::invalid_argument("train: epochs must be non-negative");
  check_labels(data, feature_map.dim());

  // Features are fixed during training, so compute them once.
  const int m = feature_map.num_features();
  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd phi(m, n);
  for (Eigen::Index i = 0; i < n; ++i) phi.col(i) = feature_map.features(data.samples[i].position);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed);

  auto objective = [&]() {
    const Eigen::VectorXd z = phi.transpose() * w;
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += sample_loss(z(i), data.samples[i].label);
    return total / static_cast<double>(n) + penalty(w, config.l1, config.l2);
  };

  TrainingMeta meta;
  meta.epochs = config.epochs;
  meta.l1 = config.l1;
  meta.l2 = config.l2;

  long long iteration = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const auto col = phi.col(static_cast<Eigen::Index>(idx));
      const int y = data.samples[idx].label;
      const double margin = y * w.dot(col);
      // d/dw log(1 + exp(-y z)) = -y sigma(-y z) phi
      const double coeff = -y * sigmoid(-margin);
      const double step =
          config.step_size / (1.0 + config.step_decay * static_cast<double>(iteration));
      Eigen::VectorXd grad = coeff * col + config.l2 * w;
      if (config.l1 > 0.0) grad += config.l1 * w.unaryExpr([](double v) {
        return static_cast<double>((v > 0.0) - (v < 0.0));
      });
      w -= step * grad;
      ++iteration;
    }
    const double nll = objective();
    if (!std::isfinite(nll) || !w.allFinite()) {
      throw NumericFailure("train: objective diverged in epoch " + std::to_string(epoch));
    }
    meta.epoch_nll.push_back(nll);
  }
  meta.final_nll = meta.epoch_nll.empty() ? objective() : meta.epoch_nll.back();
  return OccupancyModel(std::move(feature_map), std::move(w), std::move(meta));
}

}  // namespace hmp
