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

#include "hmp/gp_path.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "hmp/errors.hpp"

namespace hmp {

// ---------------------------------------------------------------------------
// TimeKernel

double TimeKernel::operator()(double t, double t2) const {
  const double r = t - t2;
  return signal_variance * std::exp(-0.5 * r * r / (lengthscale * lengthscale));
}

double TimeKernel::d1(double t, double t2) const {
  const double r = t - t2;
  const double l2 = lengthscale * lengthscale;
  return -r / l2 * (*this)(t, t2);
}

double TimeKernel::d2(double t, double t2) const {
  const double r = t - t2;
  const double l2 = lengthscale * lengthscale;
  return (r * r / (l2 * l2) - 1.0 / l2) * (*this)(t, t2);
}

void TimeKernel::validate() const {
  if (!(lengthscale > 0.0)) throw std::invalid_argument("time kernel: lengthscale must be > 0");
  if (!(signal_variance > 0.0)) {
    throw std::invalid_argument("time kernel: signal variance must be > 0");
  }
  if (!(jitter >= 1e-12 && jitter <= 1e-6)) {
    throw std::invalid_argument("time kernel: jitter must lie in [1e-12, 1e-6]");
  }
}

// ---------------------------------------------------------------------------
// Curve

Curve Curve::straight_line(const Eigen::VectorXd& start, const Eigen::VectorXd& goal) {
  if (start.size() != goal.size()) {
    throw std::invalid_argument("straight line: start and goal dimensions differ");
  }
  const Eigen::VectorXd delta = goal - start;
  Curve c;
  c.dim = static_cast<int>(start.size());
  c.kind = "straight_line";
  c.anchors = {start, goal};
  c.value = [start, delta](double t) -> Eigen::VectorXd { return start + t * delta; };
  c.velocity = [delta](double) -> Eigen::VectorXd { return delta; };
  c.acceleration = [n = delta.size()](double) -> Eigen::VectorXd {
    return Eigen::VectorXd::Zero(n);
  };
  return c;
}

Curve Curve::constant(const Eigen::VectorXd& value) {
  Curve c;
  c.dim = static_cast<int>(value.size());
  c.kind = "constant";
  c.anchors = {value};
  c.value = [value](double) -> Eigen::VectorXd { return value; };
  c.velocity = [n = value.size()](double) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(n); };
  c.acceleration = c.velocity;
  return c;
}

Curve Curve::from_function(std::function<Eigen::VectorXd(double)> f, int dim, double h) {
  if (!f) throw std::invalid_argument("curve: empty function");
  if (!(h > 0.0 && h < 0.1)) throw std::invalid_argument("curve: step must lie in (0, 0.1)");
  Curve c;
  c.dim = dim;
  c.value = f;
  c.velocity = [f, h](double t) -> Eigen::VectorXd {
    if (t - h < 0.0) return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2 * h)) / (2 * h);
    if (t + h > 1.0) return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2 * h)) / (2 * h);
    return (f(t + h) - f(t - h)) / (2 * h);
  };
  c.acceleration = [f, h](double t) -> Eigen::VectorXd {
    const double h2 = h * h;
    if (t - h < 0.0) {
      return (2.0 * f(t) - 5.0 * f(t + h) + 4.0 * f(t + 2 * h) - f(t + 3 * h)) / h2;
    }
    if (t + h > 1.0) {
      return (2.0 * f(t) - 5.0 * f(t - h) + 4.0 * f(t - 2 * h) - f(t - 3 * h)) / h2;
    }
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / h2;
  };
  return c;
}

// ---------------------------------------------------------------------------
// PathMean

namespace {
// Terms further than this many lengthscales contribute below exp(-72).
constexpr double kCutoffLengthscales = 12.0;
}  // namespace

PathMean::PathMean(Curve base, TimeKernel kernel)
    : base_(std::move(base)), kernel_(kernel), coefficients_(0, base_.dim) {
  if (base_.dim < 1 || !base_.value || !base_.velocity || !base_.acceleration) {
    throw std::invalid_argument("path mean: incomplete base curve");
  }
}

Eigen::VectorXd PathMean::value(double t) const {
  Eigen::VectorXd out = base_.value(t);
  const double cutoff = kCutoffLengthscales * kernel_.lengthscale;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (std::abs(t - centers_[i]) > cutoff) continue;
    out += kernel_(t, centers_[i]) * coefficients_.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

Eigen::VectorXd PathMean::velocity(double t) const {
  Eigen::VectorXd out = base_.velocity(t);
  const double cutoff = kCutoffLengthscales * kernel_.lengthscale;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (std::abs(t - centers_[i]) > cutoff) continue;
    out += kernel_.d1(t, centers_[i]) *
           coefficients_.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

Eigen::VectorXd PathMean::acceleration(double t) const {
  Eigen::VectorXd out = base_.acceleration(t);
  const double cutoff = kCutoffLengthscales * kernel_.lengthscale;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (std::abs(t - centers_[i]) > cutoff) continue;
    out += kernel_.d2(t, centers_[i]) *
           coefficients_.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

void PathMean::add_terms(const std::vector<double>& centers, const Eigen::MatrixXd& coefficients) {
  if (static_cast<Eigen::Index>(centers.size()) != coefficients.rows() ||
      coefficients.cols() != dim()) {
    throw std::invalid_argument("path mean: term shape mismatch");
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const auto row = coefficients.row(static_cast<Eigen::Index>(i));
    auto it = std::find(centers_.begin(), centers_.end(), centers[i]);
    if (it != centers_.end()) {
      coefficients_.row(it - centers_.begin()) += row;
      continue;
    }
    centers_.push_back(centers[i]);
    coefficients_.conservativeResize(coefficients_.rows() + 1, Eigen::NoChange);
    coefficients_.row(coefficients_.rows() - 1) = row;
  }
}

// ---------------------------------------------------------------------------
// GpPath

GpPath::GpPath(PathMean mean, TimeKernel kernel, double dedup_tolerance)
    : mean_(std::move(mean)), kernel_(kernel), dedup_tolerance_(dedup_tolerance) {
  kernel_.validate();
  if (!(dedup_tolerance_ >= 0.0)) throw std::invalid_argument("gp path: negative dedup tolerance");
  const TimeKernel& mk = mean_.kernel();
  if (mean_.centers().empty()) {
    mean_ = PathMean(mean_.base(), kernel_);
  } else if (mk.lengthscale != kernel_.lengthscale ||
             mk.signal_variance != kernel_.signal_variance) {
    throw std::invalid_argument("gp path: mean expansion uses a different kernel");
  }
}

GpPath::GpPath(Curve mean, TimeKernel kernel, double dedup_tolerance)
    : GpPath(PathMean(std::move(mean), kernel), kernel, dedup_tolerance) {}

void GpPath::check_time(double t, const char* what) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": time " + std::to_string(t) +
                                " outside [0, 1]");
  }
}

void GpPath::add_observation(double t, const Eigen::VectorXd& state, ObservationKind kind) {
  check_time(t, "add_observation");
  if (state.size() != dim()) throw std::invalid_argument("add_observation: dimension mismatch");
  if (!state.allFinite()) throw NumericFailure("add_observation: non-finite state");

  for (auto& obs : observations_) {
    if (std::abs(obs.t - t) <= dedup_tolerance_) {
      if (obs.kind == ObservationKind::kBoundary && kind == ObservationKind::kSupport) return;
      obs = PathObservation{t, state, kind};
      cache_.reset();
      return;
    }
  }
  observations_.push_back(PathObservation{t, state, kind});
  cache_.reset();
}

void GpPath::set_boundary_conditions(const Eigen::VectorXd& start, const Eigen::VectorXd& goal) {
  add_observation(0.0, start, ObservationKind::kBoundary);
  add_observation(1.0, goal, ObservationKind::kBoundary);
}

const GpPath::Solution& GpPath::solution() const {
  if (cache_) return *cache_;
  auto sol = std::make_shared<Solution>();
  const auto n = static_cast<Eigen::Index>(observations_.size());
  sol->times.reserve(observations_.size());
  for (const auto& obs : observations_) sol->times.push_back(obs.t);

  if (n > 0) {
    Eigen::MatrixXd gram(n, n);
    Eigen::MatrixXd residual(n, dim());
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        gram(i, j) = gram(j, i) = kernel_(sol->times[i], sol->times[j]);
      }
      gram(i, i) += kernel_.jitter;
      residual.row(i) = (observations_[i].state - mean_.value(sol->times[i])).transpose();
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    sol->alpha = llt.solve(residual);
    if (llt.info() != Eigen::Success || !sol->alpha.allFinite()) {
      std::ostringstream msg;
      msg << "gp path: conditioning failed for observation times [";
      for (Eigen::Index i = 0; i < n; ++i) msg << (i ? ", " : "") << sol->times[i];
      msg << "]";
      throw NumericFailure(msg.str());
    }
  } else {
    sol->alpha.resize(0, dim());
  }
  cache_ = std::move(sol);
  return *cache_;
}

void GpPath::prepare() const { solution(); }

Eigen::VectorXd GpPath::query(double t) const {
  check_time(t, "query");
  if (observations_.empty()) return mean_.value(t);
  const Solution& sol = solution();
  Eigen::VectorXd out = mean_.value(t);
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    out += kernel_(t, sol.times[i]) * sol.alpha.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

Eigen::VectorXd GpPath::velocity(double t) const {
  check_time(t, "velocity");
  Eigen::VectorXd out = mean_.velocity(t);
  if (observations_.empty()) return out;
  const Solution& sol = solution();
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    out += kernel_.d1(t, sol.times[i]) * sol.alpha.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

Eigen::VectorXd GpPath::second_time_derivative(double t) const {
  check_time(t, "second_time_derivative");
  Eigen::VectorXd out = mean_.acceleration(t);
  if (observations_.empty()) return out;
  const Solution& sol = solution();
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    out += kernel_.d2(t, sol.times[i]) * sol.alpha.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

Eigen::MatrixXd GpPath::sample(int n) const {
  if (n < 2) throw std::invalid_argument("sample: need at least 2 grid points");
  Eigen::MatrixXd out(n, dim());
  for (int i = 0; i < n; ++i) {
    out.row(i) = query(static_cast<double>(i) / (n - 1)).transpose();
  }
  return out;
}

GpPath GpPath::rebased() const {
  PathMean next = mean_;
  if (!observations_.empty()) {
    const Solution& sol = solution();
    next.add_terms(sol.times, sol.alpha);
  }
  return GpPath(std::move(next), kernel_, dedup_tolerance_);
}

double path_length(const GpPath& path, int grid_size) {
  const Eigen::MatrixXd pts = path.sample(grid_size);
  double total = 0.0;
  for (Eigen::Index i = 1; i < pts.rows(); ++i) total += (pts.row(i) - pts.row(i - 1)).norm();
  return total;
}

}  // namespace hmp
