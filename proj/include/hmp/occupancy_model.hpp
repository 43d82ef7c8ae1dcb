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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hmp/feature_map.hpp"
#include "hmp/labeled_data.hpp"

namespace hmp {

/// SGD settings for fitting the logistic weights. Defaults are the toolkit's
/// declared choices: step 0.1 decaying as 1/(1 + 0.01 k), ten epochs, and an
/// elastic-net penalty of 1e-4 on each norm.
struct TrainConfig {
  double step_size = 0.1;
  double step_decay = 0.01;
  int epochs = 10;
  double l1 = 1e-4;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
  bool shuffle = true;
};

struct TrainingMeta {
  int epochs = 0;
  double l1 = 0.0;
  double l2 = 0.0;
  double final_nll = 0.0;
  std::vector<double> epoch_nll;  // regularised NLL after each epoch
  std::string feature_form = "cosine-random-phase";
};

/**
 * Continuous occupancy map: logistic regression over random Fourier features.
 *
 * predict() returns sigma(w . phi(x)); gradient() is its closed-form spatial
 * derivative. Safe for concurrent reads.
 */
class OccupancyModel {
 public:
  OccupancyModel(FeatureMap feature_map, Eigen::VectorXd weights, TrainingMeta meta = {});

  /// A model with all-zero weights, i.e. occupancy 0.5 everywhere.
  static OccupancyModel uninformed(FeatureMap feature_map);

  const FeatureMap& feature_map() const { return feature_map_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const TrainingMeta& meta() const { return meta_; }
  int dim() const { return feature_map_.dim(); }

  /// Linear score w . phi(x).
  double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  FeatureMap feature_map_;
  Eigen::VectorXd weights_;
  TrainingMeta meta_;
};

double sigmoid(double z);

/// Mean logistic loss plus l1 |w|_1 + (l2/2) |w|^2. Probabilities are clamped
/// to [1e-12, 1 - 1e-12] here only.
double regularised_nll(const OccupancyModel& model, const LabeledPointCloud& data, double l1,
                       double l2);

/// Fraction of samples whose label matches predict() thresholded at 0.5.
double training_accuracy(const OccupancyModel& model, const LabeledPointCloud& data);

OccupancyModel train(const LabeledPointCloud& data, FeatureMap feature_map,
                     const TrainConfig& config = {});

}  // namespace hmp
