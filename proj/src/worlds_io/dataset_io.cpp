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

#include "hmp/dataset_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_field(const std::string& field, int line) {
  try {
    std::size_t used = 0;
    const std::string t = trim(field);
    const double v = std::stod(t, &used);
    if (used != t.size()) throw FormatError("trailing characters in '" + field + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("cannot parse number '" + field + "'", line);
  }
}

}  // namespace

void save_dataset(const LabeledPointCloud& cloud, std::ostream& out) {
  out << "x,y,label\n";
  out << std::setprecision(17);
  for (const auto& s : cloud.samples) {
    if (s.position.size() != 2) throw std::invalid_argument("save_dataset: only 2-d samples");
    out << s.position(0) << ',' << s.position(1) << ',' << s.label << '\n';
  }
}

LabeledPointCloud load_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,y,label") {
    throw FormatError("missing header 'x,y,label'", 1);
  }
  LabeledPointCloud cloud;
  cloud.provenance = Provenance::kFile;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 3) throw FormatError("expected 3 fields", lineno);
    const double x = parse_field(fields[0], lineno);
    const double y = parse_field(fields[1], lineno);
    const double label = parse_field(fields[2], lineno);
    if (label != 1.0 && label != -1.0) {
      throw FormatError("label must be -1 or 1, got '" + trim(fields[2]) + "'", lineno);
    }
    cloud.samples.push_back({Eigen::Vector2d(x, y), static_cast<int>(label)});
  }
  return cloud;
}

void save_dataset_file(const LabeledPointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_dataset(cloud, out);
}

LabeledPointCloud load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return load_dataset(in);
}

}  // namespace hmp
