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
#include <vector>

#include <Eigen/Core>

namespace hmp {

/// One occupancy observation: a position and a label of +1 (occupied) or -1 (free).
struct LabeledSample {
  Eigen::VectorXd position;
  int label = -1;
};

enum class Provenance { kSynthetic, kLogDerived, kFile };

struct LabeledPointCloud {
  std::vector<LabeledSample> samples;
  Provenance provenance = Provenance::kFile;
  std::uint64_t seed = 0;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
  std::size_t count(int label) const {
    std::size_t n = 0;
    for (const auto& s : samples) n += (s.label == label);
    return n;
  }
};

}  // namespace hmp
