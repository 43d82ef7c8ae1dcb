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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hmp {

/// Squared-exponential kernel over time, shared by every output dimension:
/// k(t, t') = sigma_f^2 exp(-(t - t')^2 / (2 l^2)).
struct TimeKernel {
  double lengthscale = 0.1;
  double signal_variance = 1.0;
  double jitter = 1e-8;

  double operator()(double t, double t2) const;
  /// d/dt k(t, t2), derivative in the first argument.
  double d1(double t, double t2) const;
  /// d^2/dt^2 k(t, t2).
  double d2(double t, double t2) const;

  /// Throws std::invalid_argument unless l > 0, sigma_f^2 > 0, jitter in [1e-12, 1e-6].
  void validate() const;
};

/// A curve on [0, 1] with its first two time derivatives.
struct Curve {
  int dim = 0;
  // "straight_line" and "constant" curves can be rebuilt from their anchors;
  // "function" curves cannot be serialised.
  std::string kind = "function";
  std::vector<Eigen::VectorXd> anchors;
  std::function<Eigen::VectorXd(double)> value;
  std::function<Eigen::VectorXd(double)> velocity;
  std::function<Eigen::VectorXd(double)> acceleration;

  static Curve straight_line(const Eigen::VectorXd& start, const Eigen::VectorXd& goal);
  static Curve constant(const Eigen::VectorXd& value);
  /// Wraps an arbitrary function; derivatives come from finite differences,
  /// one-sided within h of the interval ends.
  static Curve from_function(std::function<Eigen::VectorXd(double)> f, int dim,
                             double h = 1e-4);
};

/**
 * Prior mean of a GP path: a base curve plus a finite kernel expansion
 * sum_i k(t, c_i) a_i. Re-basing a conditioned path on its own posterior
 * adds that posterior's expansion terms here, so chains of re-based paths
 * stay flat and cheap to evaluate.
 */
class PathMean {
 public:
  PathMean() = default;
  PathMean(Curve base, TimeKernel kernel);

  int dim() const { return base_.dim; }
  const Curve& base() const { return base_; }
  const TimeKernel& kernel() const { return kernel_; }
  const std::vector<double>& centers() const { return centers_; }
  /// One row per center.
  const Eigen::MatrixXd& coefficients() const { return coefficients_; }

  Eigen::VectorXd value(double t) const;
  Eigen::VectorXd velocity(double t) const;
  Eigen::VectorXd acceleration(double t) const;

  /// Adds terms; coefficients at an existing center are summed into it.
  void add_terms(const std::vector<double>& centers, const Eigen::MatrixXd& coefficients);

 private:
  Curve base_;
  TimeKernel kernel_;
  std::vector<double> centers_;
  Eigen::MatrixXd coefficients_;
};

enum class ObservationKind { kBoundary, kSupport };

struct PathObservation {
  double t = 0.0;
  Eigen::VectorXd state;
  ObservationKind kind = ObservationKind::kSupport;
};

/**
 * Vector-valued GP path over t in [0, 1] with independent outputs.
 *
 * The path value is the posterior mean conditioned on a set of noise-free
 * (jittered) observations. The conditioning solve is cached and rebuilt on the
 * first query after a mutation; call prepare() before sharing a path across
 * threads for reading.
 */
class GpPath {
 public:
  static constexpr double kDefaultDedupTolerance = 1e-3;

  GpPath(PathMean mean, TimeKernel kernel, double dedup_tolerance = kDefaultDedupTolerance);
  GpPath(Curve mean, TimeKernel kernel, double dedup_tolerance = kDefaultDedupTolerance);

  int dim() const { return mean_.dim(); }
  const TimeKernel& kernel() const { return kernel_; }
  const PathMean& mean() const { return mean_; }
  const std::vector<PathObservation>& observations() const { return observations_; }
  double dedup_tolerance() const { return dedup_tolerance_; }

  /// Inserts an observation. One already within the dedup tolerance in time is
  /// replaced, except that a support observation never displaces a boundary one.
  void add_observation(double t, const Eigen::VectorXd& state,
                       ObservationKind kind = ObservationKind::kSupport);

  /// Pins (0, start) and (1, goal) as boundary observations.
  void set_boundary_conditions(const Eigen::VectorXd& start, const Eigen::VectorXd& goal);

  /// Posterior mean at t in [0, 1].
  Eigen::VectorXd query(double t) const;
  Eigen::VectorXd velocity(double t) const;
  Eigen::VectorXd second_time_derivative(double t) const;

  /// Samples the posterior on a uniform grid of n >= 2 points (rows).
  Eigen::MatrixXd sample(int n) const;

  /// A fresh path with no observations whose prior mean is this posterior mean.
  GpPath rebased() const;

  /// Builds the conditioning cache now.
  void prepare() const;

 private:
  struct Solution {
    std::vector<double> times;
    Eigen::MatrixXd alpha;  // (K + jitter I)^-1 (Y - mu(T)), one row per observation
  };

  const Solution& solution() const;
  void check_time(double t, const char* what) const;

  PathMean mean_;
  TimeKernel kernel_;
  double dedup_tolerance_;
  std::vector<PathObservation> observations_;
  mutable std::shared_ptr<const Solution> cache_;
};

/// Polyline length of the posterior sampled on a uniform grid of grid_size points.
double path_length(const GpPath& path, int grid_size = 1000);

}  // namespace hmp
