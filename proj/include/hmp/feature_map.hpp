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

#include <Eigen/Core>

namespace hmp {

/// Exact RBF kernel exp(-gamma * |x - x2|^2).
double rbf_kernel(double gamma, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& x2);

/**
 * Random Fourier features for the RBF kernel exp(-gamma |x - x'|^2).
 *
 * Feature j is sqrt(2/m) cos(w_j . x + b_j) with w_j ~ N(0, 2 gamma I) and
 * b_j ~ U[0, 2pi). The dot product of two feature vectors is an unbiased
 * estimate of the kernel. Immutable once built.
 */
class FeatureMap {
 public:
  /// Draws frequencies and phases from a seeded generator. Equal arguments
  /// give bit-identical maps.
  static FeatureMap random(double gamma, int num_features, int dim, std::uint64_t seed);

  /// Explicit construction; frequencies is m x D, phases has m entries.
  FeatureMap(double gamma, Eigen::MatrixXd frequencies, Eigen::VectorXd phases,
             std::uint64_t seed = 0);

  double gamma() const { return gamma_; }
  int num_features() const { return static_cast<int>(phases_.size()); }
  int dim() const { return static_cast<int>(frequencies_.cols()); }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& frequencies() const { return frequencies_; }
  const Eigen::VectorXd& phases() const { return phases_; }

  Eigen::VectorXd features(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// m x D matrix of partial derivatives d(phi_j)/dx.
  Eigen::MatrixXd jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Feature dot product averaged over the phases, (1/m) sum_j cos(w_j . (x - x2)).
  /// Depends on x - x2 only, so it is exactly symmetric and translation invariant.
  double approximate_kernel(const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Eigen::Ref<const Eigen::VectorXd>& x2) const;

  void check_dim(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  bool operator==(const FeatureMap& other) const;

 private:
  double gamma_;
  Eigen::MatrixXd frequencies_;
  Eigen::VectorXd phases_;
  std::uint64_t seed_;
  double scale_;
};

}  // namespace hmp
