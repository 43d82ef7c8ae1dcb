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

#include "hmp/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace hmp {

double rbf_kernel(double gamma, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& x2) {
  return std::exp(-gamma * (x - x2).squaredNorm());
}

FeatureMap FeatureMap::random(double gamma, int num_features, int dim, std::uint64_t seed) {
  if (!(gamma > 0.0)) throw std::invalid_argument("feature map: gamma must be positive");
  if (num_features < 1) throw std::invalid_argument("feature map: num_features must be >= 1");
  if (dim < 1) throw std::invalid_argument("feature map: dim must be >= 1");

  std::mt19937_64 rng(seed);
  // Spectral density of exp(-gamma r^2) is Gaussian with variance 2 gamma.
  std::normal_distribution<double> spectral(0.0, std::sqrt(2.0 * gamma));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  Eigen::MatrixXd frequencies(num_features, dim);
  Eigen::VectorXd phases(num_features);
  for (int j = 0; j < num_features; ++j) {
    for (int d = 0; d < dim; ++d) frequencies(j, d) = spectral(rng);
    phases(j) = phase(rng);
  }
  return FeatureMap(gamma, std::move(frequencies), std::move(phases), seed);
}

FeatureMap::FeatureMap(double gamma, Eigen::MatrixXd frequencies, Eigen::VectorXd phases,
                       std::uint64_t seed)
    : gamma_(gamma),
      frequencies_(std::move(frequencies)),
      phases_(std::move(phases)),
      seed_(seed) {
  if (!(gamma_ > 0.0)) throw std::invalid_argument("feature map: gamma must be positive");
  if (phases_.size() < 1) throw std::invalid_argument("feature map: num_features must be >= 1");
  if (frequencies_.rows() != phases_.size() || frequencies_.cols() < 1) {
    throw std::invalid_argument("feature map: frequencies must be num_features x dim");
  }
  scale_ = std::sqrt(2.0 / static_cast<double>(phases_.size()));
}

void FeatureMap::check_dim(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != frequencies_.cols()) {
    throw std::invalid_argument("feature map: expected a " + std::to_string(frequencies_.cols()) +
                                "-d point, got " + std::to_string(x.size()) + "-d");
  }
}

Eigen::VectorXd FeatureMap::features(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x);
  Eigen::VectorXd arg = frequencies_ * x + phases_;
  return scale_ * arg.array().cos().matrix();
}

Eigen::MatrixXd FeatureMap::jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x);
  Eigen::VectorXd arg = frequencies_ * x + phases_;
  Eigen::VectorXd s = -scale_ * arg.array().sin().matrix();
  return s.asDiagonal() * frequencies_;
}

double FeatureMap::approximate_kernel(const Eigen::Ref<const Eigen::VectorXd>& x,
                                      const Eigen::Ref<const Eigen::VectorXd>& x2) const {
  check_dim(x);
  check_dim(x2);
  const Eigen::VectorXd d = x - x2;
  return (frequencies_ * d).array().cos().mean();
}

bool FeatureMap::operator==(const FeatureMap& other) const {
  return gamma_ == other.gamma_ && seed_ == other.seed_ &&
         frequencies_.rows() == other.frequencies_.rows() &&
         frequencies_.cols() == other.frequencies_.cols() &&
         frequencies_ == other.frequencies_ && phases_ == other.phases_;
}

}  // namespace hmp
