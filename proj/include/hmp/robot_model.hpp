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
#include <vector>

#include <Eigen/Core>

namespace hmp {

/**
 * Maps a configuration and a body point into the workspace. The Jacobian is
 * workspace-dim x config-dim and pulls workspace gradients back into
 * configuration space.
 */
struct RobotModel {
  using Kinematics =
      std::function<Eigen::VectorXd(const Eigen::VectorXd& config, const Eigen::VectorXd& body)>;
  using Jacobian =
      std::function<Eigen::MatrixXd(const Eigen::VectorXd& config, const Eigen::VectorXd& body)>;

  int config_dim = 0;
  int workspace_dim = 0;
  std::vector<Eigen::VectorXd> body_points;
  Kinematics forward_kinematics;
  Jacobian jacobian;

  /// Single body point at the origin, identity kinematics.
  static RobotModel point_robot(int dim);

  void validate() const;
};

/// Largest absolute deviation between the model's Jacobian and central
/// differences of its kinematics at (config, body).
double jacobian_fd_error(const RobotModel& robot, const Eigen::VectorXd& config,
                         const Eigen::VectorXd& body, double h = 1e-6);

}  // namespace hmp
