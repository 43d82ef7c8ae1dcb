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

#include "hmp/environment.hpp"
#include "hmp/labeled_data.hpp"

namespace hmp {

// Dataset CSV: header "x,y,label", one sample per line, label -1 or 1.
// Coordinates are written with 17 significant digits.
void save_dataset(const LabeledPointCloud& cloud, std::ostream& out);
/// Throws FormatError naming the offending line.
LabeledPointCloud load_dataset(std::istream& in);

void save_dataset_file(const LabeledPointCloud& cloud, const std::string& path);
LabeledPointCloud load_dataset_file(const std::string& path);

// Environment JSON:
//   {"bounds": {"min": [x, y], "max": [x, y]},
//    "obstacles": [{"kind": "circle", "center": [x, y], "radius": r},
//                  {"kind": "rectangle", "corner": [x, y], "extents": [w, h]},
//                  {"kind": "polygon", "vertices": [[x, y], ...]}]}
void save_environment(const Environment& env, std::ostream& out);
/// Validates bounds (min < max), containment of every obstacle and polygon simplicity.
Environment load_environment(std::istream& in);

void save_environment_file(const Environment& env, const std::string& path);
Environment load_environment_file(const std::string& path);

}  // namespace hmp
