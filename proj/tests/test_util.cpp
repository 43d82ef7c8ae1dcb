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

#include "test_util.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hmp::test {

const BuiltMap& trained_map(const std::string& environment_file) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<BuiltMap>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[environment_file];
  if (!slot) {
    slot = std::make_unique<BuiltMap>(build_map(environment_world(environment_file), MapConfig{}));
  }
  return *slot;
}

}  // namespace hmp::test
