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

#include <stdexcept>
#include <string>

namespace hmp {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the remaining failure classes so callers (and the CLI exit codes) can
// tell them apart.

/// A numerical procedure produced a non-finite value or a failed factorisation.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Start or goal sits in space the map considers unsafe.
class InfeasibleEndpoints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search-based planner exhausted its budget without reaching the goal.
class PlanningFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file content. Carries the offending 1-based line when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class PlacementFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hmp
