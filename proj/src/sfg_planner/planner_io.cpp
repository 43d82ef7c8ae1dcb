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

#include "hmp/planner_io.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                    const std::string& what) {
  if (!j.is_object()) throw FormatError(what + " config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw FormatError(what + " config: unknown key '" + item.key() + "'");
  }
}

}  // namespace

void from_json(const nlohmann::json& j, TimeKernel& kernel) {
  reject_unknown(j, {"lengthscale", "signal_variance", "jitter"}, "kernel");
  kernel.lengthscale = j.value("lengthscale", kernel.lengthscale);
  kernel.signal_variance = j.value("signal_variance", kernel.signal_variance);
  kernel.jitter = j.value("jitter", kernel.jitter);
}

void to_json(nlohmann::json& j, const TimeKernel& kernel) {
  j = {{"lengthscale", kernel.lengthscale},
       {"signal_variance", kernel.signal_variance},
       {"jitter", kernel.jitter}};
}

void from_json(const nlohmann::json& j, PlannerConfig& c) {
  reject_unknown(j,
                 {"p_safe", "lambda", "eta0", "decay_tau", "preconditioner", "minibatch_size",
                  "max_iterations", "convergence_window", "convergence_tolerance", "seed",
                  "kernel", "dedup_tolerance", "occupancy_grid", "objective_samples"},
                 "planner");
  c.p_safe = j.value("p_safe", c.p_safe);
  c.lambda = j.value("lambda", c.lambda);
  c.eta0 = j.value("eta0", c.eta0);
  c.decay_tau = j.value("decay_tau", c.decay_tau);
  if (j.contains("preconditioner")) {
    const auto rows = j["preconditioner"].get<std::vector<std::vector<double>>>();
    c.preconditioner.resize(static_cast<Eigen::Index>(rows.size()),
                            rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != c.preconditioner.cols()) {
        throw FormatError("planner config: ragged preconditioner");
      }
      for (std::size_t k = 0; k < rows[r].size(); ++k) {
        c.preconditioner(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rows[r][k];
      }
    }
  }
  c.minibatch_size = j.value("minibatch_size", c.minibatch_size);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.convergence_window = j.value("convergence_window", c.convergence_window);
  c.convergence_tolerance = j.value("convergence_tolerance", c.convergence_tolerance);
  c.seed = j.value("seed", c.seed);
  if (j.contains("kernel")) from_json(j["kernel"], c.kernel);
  c.dedup_tolerance = j.value("dedup_tolerance", c.dedup_tolerance);
  c.occupancy_grid = j.value("occupancy_grid", c.occupancy_grid);
  c.objective_samples = j.value("objective_samples", c.objective_samples);
}

void to_json(nlohmann::json& j, const PlannerConfig& c) {
  std::vector<std::vector<double>> pre;
  for (Eigen::Index r = 0; r < c.preconditioner.rows(); ++r) {
    pre.emplace_back();
    for (Eigen::Index k = 0; k < c.preconditioner.cols(); ++k) pre.back().push_back(c.preconditioner(r, k));
  }
  j = {{"p_safe", c.p_safe},
       {"lambda", c.lambda},
       {"eta0", c.eta0},
       {"decay_tau", c.decay_tau},
       {"minibatch_size", c.minibatch_size},
       {"max_iterations", c.max_iterations},
       {"convergence_window", c.convergence_window},
       {"convergence_tolerance", c.convergence_tolerance},
       {"seed", c.seed},
       {"kernel", c.kernel},
       {"dedup_tolerance", c.dedup_tolerance},
       {"occupancy_grid", c.occupancy_grid},
       {"objective_samples", c.objective_samples}};
  if (!pre.empty()) j["preconditioner"] = pre;
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  reject_unknown(j, {"step_size", "step_decay", "epochs", "l1", "l2", "seed", "shuffle"}, "train");
  c.step_size = j.value("step_size", c.step_size);
  c.step_decay = j.value("step_decay", c.step_decay);
  c.epochs = j.value("epochs", c.epochs);
  c.l1 = j.value("l1", c.l1);
  c.l2 = j.value("l2", c.l2);
  c.seed = j.value("seed", c.seed);
  c.shuffle = j.value("shuffle", c.shuffle);
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"step_size", c.step_size}, {"step_decay", c.step_decay}, {"epochs", c.epochs},
       {"l1", c.l1},               {"l2", c.l2},                 {"seed", c.seed},
       {"shuffle", c.shuffle}};
}

void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& out) {
  out << "iteration,max_occupancy,objective,accepted,rejected\n" << std::setprecision(17);
  for (const auto& r : trace) {
    out << r.iteration << ',' << r.max_occupancy << ',' << r.objective << ',' << r.accepted << ','
        << r.rejected << '\n';
  }
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iteration,max_occupancy,objective,accepted,rejected") {
    throw FormatError("trace CSV: bad header", 1);
  }
  std::vector<IterationRecord> trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    IterationRecord r;
    if (!(ss >> r.iteration >> r.max_occupancy >> r.objective >> r.accepted >> r.rejected)) {
      throw FormatError("trace CSV: malformed row", lineno);
    }
    trace.push_back(r);
  }
  return trace;
}

}  // namespace hmp
