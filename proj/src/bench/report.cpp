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

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hmp/errors.hpp"
#include "hmp/experiment.hpp"

namespace hmp {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += ' ';
      continue;
    }
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double to_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("expected a number, got '" + s + "'", line);
  }
}

long long to_integer(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("expected an integer, got '" + s + "'", line);
  }
}

std::uint64_t to_unsigned(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("expected an unsigned integer, got '" + s + "'", line);
  }
}

/// Reads the header, checks it and returns the data lines with their numbers.
std::vector<std::pair<int, std::vector<std::string>>> read_table(std::istream& in,
                                                                  const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing header '" + header + "'", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FormatError("expected header '" + header + "'", 1);
  const std::size_t columns = split_csv(header).size();
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != columns) {
      throw FormatError("expected " + std::to_string(columns) + " fields", number);
    }
    rows.emplace_back(number, std::move(fields));
  }
  return rows;
}

constexpr const char* kRunsHeader =
    "planner,repetition,seed,success,status,max_occupancy,path_length,wall_seconds,error";
constexpr const char* kSummaryHeader =
    "planner,runs,failures,mean_max_occupancy,std_max_occupancy,mean_path_length,"
    "std_path_length,mean_wall_seconds";
constexpr const char* kGridHeader = "x,y,occupancy";

}  // namespace

void write_occupancy_grid_csv(const OccupancyModel& model, const Bounds& bounds, double resolution,
                              std::ostream& out) {
  if (!(resolution > 0.0)) throw std::invalid_argument("occupancy grid: resolution must be positive");
  if (!bounds.valid()) throw std::invalid_argument("occupancy grid: invalid bounds");
  const Eigen::Vector2d extent = bounds.max - bounds.min;
  const int cols = std::max(1, static_cast<int>(std::ceil(extent.x() / resolution - 1e-9)));
  const int rows = std::max(1, static_cast<int>(std::ceil(extent.y() / resolution - 1e-9)));
  out << kGridHeader << '\n' << std::setprecision(17);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Eigen::Vector2d p = bounds.min + resolution * Eigen::Vector2d(c + 0.5, r + 0.5);
      out << p.x() << ',' << p.y() << ',' << model.predict(p) << '\n';
    }
  }
}

std::vector<GridSample> read_occupancy_grid_csv(std::istream& in) {
  std::vector<GridSample> out;
  for (const auto& [line, f] : read_table(in, kGridHeader)) {
    out.push_back({to_double(f[0], line), to_double(f[1], line), to_double(f[2], line)});
  }
  return out;
}

void write_runs_csv(const std::vector<RunRecord>& runs, std::ostream& out) {
  out << kRunsHeader << '\n' << std::setprecision(17);
  for (const auto& r : runs) {
    out << to_string(r.planner) << ',' << r.repetition << ',' << r.seed << ','
        << (r.success ? 1 : 0) << ',' << quote(r.status) << ',' << r.max_occupancy << ','
        << r.path_length << ',' << r.wall_seconds << ',' << quote(r.error) << '\n';
  }
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
  std::vector<RunRecord> out;
  for (const auto& [line, f] : read_table(in, kRunsHeader)) {
    RunRecord r;
    try {
      r.planner = planner_from_string(f[0]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), line);
    }
    r.repetition = static_cast<int>(to_integer(f[1], line));
    r.seed = to_unsigned(f[2], line);
    if (f[3] != "0" && f[3] != "1") throw FormatError("success must be 0 or 1", line);
    r.success = f[3] == "1";
    r.status = f[4];
    r.max_occupancy = to_double(f[5], line);
    r.path_length = to_double(f[6], line);
    r.wall_seconds = to_double(f[7], line);
    r.error = f[8];
    out.push_back(std::move(r));
  }
  return out;
}

void write_summary_csv(const std::vector<PlannerSummary>& summaries, std::ostream& out) {
  out << kSummaryHeader << '\n' << std::setprecision(17);
  for (const auto& s : summaries) {
    out << to_string(s.planner) << ',' << s.runs << ',' << s.failures << ','
        << s.mean_max_occupancy << ',' << s.std_max_occupancy << ',' << s.mean_path_length << ','
        << s.std_path_length << ',' << s.mean_wall_seconds << '\n';
  }
}

std::vector<PlannerSummary> read_summary_csv(std::istream& in) {
  std::vector<PlannerSummary> out;
  for (const auto& [line, f] : read_table(in, kSummaryHeader)) {
    PlannerSummary s;
    try {
      s.planner = planner_from_string(f[0]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), line);
    }
    s.runs = static_cast<int>(to_integer(f[1], line));
    s.failures = static_cast<int>(to_integer(f[2], line));
    s.mean_max_occupancy = to_double(f[3], line);
    s.std_max_occupancy = to_double(f[4], line);
    s.mean_path_length = to_double(f[5], line);
    s.std_path_length = to_double(f[6], line);
    s.mean_wall_seconds = to_double(f[7], line);
    out.push_back(s);
  }
  return out;
}

void write_summary_table(const std::vector<PlannerSummary>& summaries, std::ostream& out) {
  auto cell = [](double mean, double std, int precision) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << mean << " +/- " << std;
    return s.str();
  };
  out << std::left << std::setw(16) << "planner" << std::setw(24) << "max occupancy"
      << std::setw(24) << "path length [m]"
      << "runs (failed)\n";
  for (const auto& s : summaries) {
    out << std::setw(16) << to_string(s.planner);
    if (s.failed()) {
      out << std::setw(24) << "failed" << std::setw(24) << "failed";
    } else {
      out << std::setw(24) << cell(s.mean_max_occupancy, s.std_max_occupancy, 3)
          << std::setw(24) << cell(s.mean_path_length, s.std_path_length, 2);
    }
    out << s.runs << " (" << s.failures << ")\n";
  }
}

}  // namespace hmp
