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

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hmp/occupancy_model.hpp"
#include "hmp/sfg_planner.hpp"

namespace hmp {

// Config files use the field names of the structs one-to-one. Missing keys
// keep their defaults; unknown keys are rejected so typos surface.

void from_json(const nlohmann::json& j, PlannerConfig& config);
void to_json(nlohmann::json& j, const PlannerConfig& config);
void from_json(const nlohmann::json& j, TrainConfig& config);
void to_json(nlohmann::json& j, const TrainConfig& config);
void from_json(const nlohmann::json& j, TimeKernel& kernel);
void to_json(nlohmann::json& j, const TimeKernel& kernel);

/// Trace CSV: header "iteration,max_occupancy,objective,accepted,rejected".
void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& out);
std::vector<IterationRecord> read_trace_csv(std::istream& in);

}  // namespace hmp
