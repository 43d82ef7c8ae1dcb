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

#include "hmp/robot_model.hpp"

#include <stdexcept>

namespace hmp {

RobotModel RobotModel::point_robot(int dim) {
  if (dim < 1) throw std::invalid_argument("point robot: dim must be >= 1");
  RobotModel robot;
  robot.config_dim = dim;
  robot.workspace_dim = dim;
  robot.body_points = {Eigen::VectorXd::Zero(dim)};
  robot.forward_kinematics = [](const Eigen::VectorXd& q, const Eigen::VectorXd&) { return q; };
  robot.jacobian = [dim](const Eigen::VectorXd&, const Eigen::VectorXd&) -> Eigen::MatrixXd {
    return Eigen::MatrixXd::Identity(dim, dim);
  };
  return robot;
}

void RobotModel::validate() const {
  if (config_dim < 1 || workspace_dim < 1) throw std::invalid_argument("robot: bad dimensions");
  if (body_points.empty()) throw std::invalid_argument("robot: no body points");
  if (!forward_kinematics || !jacobian) throw std::invalid_argument("robot: missing kinematics");
}

double jacobian_fd_error(const RobotModel& robot, const Eigen::VectorXd& config,
                         const Eigen::VectorXd& body, double h) {
  const Eigen::MatrixXd analytic = robot.jacobian(config, body);
  Eigen::MatrixXd numeric(robot.workspace_dim, robot.config_dim);
  for (int c = 0; c < robot.config_dim; ++c) {
    Eigen::VectorXd up = config, down = config;
    up(c) += h;
    down(c) -= h;
    numeric.col(c) =
        (robot.forward_kinematics(up, body) - robot.forward_kinematics(down, body)) / (2.0 * h);
  }
  return (analytic - numeric).cwiseAbs().maxCoeff();
}

}  // namespace hmp
