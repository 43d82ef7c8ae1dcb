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

#include "hmp/occupancy_model.hpp"

namespace hmp {

// Model snapshot, JSON, format version 1:
//   {"format": "hmp-occupancy-model", "version": 1, "gamma": g, "seed": s,
//    "num_features": m, "dim": D, "feature_form": "...",
//    "frequencies": [[...] x m], "phases": [...], "weights": [...],
//    "training": {"epochs", "l1", "l2", "final_nll", "epoch_nll"}}
// Doubles are written with round-trip precision so load(save(m)) == m.

void save_model(const OccupancyModel& model, std::ostream& out);
OccupancyModel load_model(std::istream& in);

void save_model_file(const OccupancyModel& model, const std::string& path);
OccupancyModel load_model_file(const std::string& path);

}  // namespace hmp
