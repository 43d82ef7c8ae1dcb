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

#include "hmp/gp_path.hpp"

namespace hmp {

// GP path export, JSON:
//   {"format": "hmp-gp-path", "version": 1, "dim": D,
//    "kernel": {"lengthscale", "signal_variance", "jitter"}, "dedup_tolerance": d,
//    "base": {"kind": "straight_line" | "constant" | "function", "anchors": [[...]]},
//    "expansion": {"centers": [...], "coefficients": [[...]]},
//    "observations": [{"t", "state": [...], "kind": "boundary" | "support"}],
//    "grid": [{"t", "state": [...]}]}
// The grid is for plotting. base + expansion + observations reconstruct the
// path exactly when the base kind is not "function".

void save_path(const GpPath& path, int grid_size, std::ostream& out);
GpPath load_path(std::istream& in);

void save_path_file(const GpPath& path, int grid_size, const std::string& file);
GpPath load_path_file(const std::string& file);

}  // namespace hmp
