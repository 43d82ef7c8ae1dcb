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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hmp/dataset_io.hpp"
#include "hmp/experiment.hpp"
#include "hmp/model_io.hpp"
#include "hmp/path_io.hpp"
#include "hmp/planner_io.hpp"
#include "test_util.hpp"

namespace hmp {
namespace {

namespace fs = std::filesystem;
using Eigen::Vector2d;

struct Outcome {
  int code = -1;
  std::string output;  // stdout and stderr
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("hmp_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir(const std::string& sub = "") const {
    const fs::path p = sub.empty() ? dir_ : dir_ / sub;
    fs::create_directories(p);
    return p;
  }

  Outcome hmp(const std::string& args) const {
    const fs::path log = dir_ / "cli_output.txt";
    const std::string cmd = std::string("\"") + HMP_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    o.output = ss.str();
    return o;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::string src(const std::string& rel) { return "\"" + test::source_path(rel) + "\""; }
  static std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

 private:
  fs::path dir_;
};

// world-gen

TEST_F(CliTest, WorldGenIsReproducible) {
  const fs::path a = dir("a"), b = dir("b");
  ASSERT_EQ(hmp("--seed 7 --out-dir " + q(a) + " world-gen --obstacles 8").code, 0);
  ASSERT_EQ(hmp("--seed 7 --out-dir " + q(b) + " world-gen --obstacles 8").code, 0);
  EXPECT_FALSE(read(a / "world.json").empty());
  EXPECT_EQ(read(a / "world.json"), read(b / "world.json"));
  EXPECT_EQ(read(a / "dataset.csv"), read(b / "dataset.csv"));
  EXPECT_EQ(load_environment_file((a / "world.json").string()).obstacles.size(), 8u);
  const LabeledPointCloud data = load_dataset_file((a / "dataset.csv").string());
  EXPECT_GT(data.count(+1), 0u);
  EXPECT_GT(data.count(-1), 0u);
}

TEST_F(CliTest, WorldGenBadFlagsExitTwo) {
  EXPECT_EQ(hmp("--seed 1 --out-dir " + q(dir()) + " world-gen --bounds 10 0 0 10").code, 2);
  EXPECT_EQ(hmp("--seed 1 --out-dir " + q(dir()) + " world-gen --obstacles -3").code, 2);
  EXPECT_EQ(hmp("world-gen --no-such-flag").code, 2);
  EXPECT_EQ(hmp("no-such-command").code, 2);
}

TEST_F(CliTest, MissingSeedIsDrawnAndPrinted) {
  const Outcome o = hmp("--out-dir " + q(dir()) + " world-gen --obstacles 2");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.output.find("seed: "), std::string::npos) << o.output;
}

TEST_F(CliTest, ZeroObstaclesWarnsOfDegenerateClasses) {
  const fs::path w = dir("w");
  ASSERT_EQ(hmp("--seed 2 --out-dir " + q(w) + " world-gen --obstacles 0").code, 0);
  const LabeledPointCloud data = load_dataset_file((w / "dataset.csv").string());
  EXPECT_EQ(data.count(+1), 0u);
  EXPECT_GT(data.count(-1), 0u);
  const Outcome o =
      hmp("--seed 2 --out-dir " + q(dir("m")) + " map-build --dataset " + q(w / "dataset.csv") + " --features 50");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.output.find("warning"), std::string::npos) << o.output;
  EXPECT_NE(o.output.find("degenerate"), std::string::npos);
}

// map-build

double reported(const std::string& output, const std::string& key) {
  const auto pos = output.find(key + ": ");
  if (pos == std::string::npos) return -1.0;
  return std::stod(output.substr(pos + key.size() + 2));
}

TEST_F(CliTest, MapBuildOnGeneratedWorld) {
  const fs::path w = dir("w"), m = dir("m");
  ASSERT_EQ(hmp("--seed 3 --out-dir " + q(w) + " world-gen --obstacles 8").code, 0);
  const Outcome o = hmp("--seed 3 --out-dir " + q(m) + " map-build --environment " + q(w / "world.json"));
  ASSERT_EQ(o.code, 0) << o.output;
  EXPECT_GE(reported(o.output, "training accuracy"), 0.9) << o.output;
  EXPECT_GT(reported(o.output, "training nll"), 0.0);
  const OccupancyModel model = load_model_file((m / "model.json").string());
  std::ifstream grid(m / "occupancy_grid.csv");
  const auto cells = read_occupancy_grid_csv(grid);
  ASSERT_FALSE(cells.empty());
  for (std::size_t i = 0; i < cells.size(); i += 97) {
    EXPECT_NEAR(cells[i].occupancy, model.predict(Vector2d(cells[i].x, cells[i].y)), 1e-9);
  }
}

TEST_F(CliTest, MapBuildSameSeedSameBytes) {
  const fs::path a = dir("a"), b = dir("b");
  const std::string args = " map-build --environment " + src("tests/assets/single_obstacle.json") + " --features 200";
  ASSERT_EQ(hmp("--seed 5 --out-dir " + q(a) + args).code, 0);
  ASSERT_EQ(hmp("--seed 5 --out-dir " + q(b) + args).code, 0);
  EXPECT_EQ(read(a / "model.json"), read(b / "model.json"));
  EXPECT_EQ(read(a / "occupancy_grid.csv"), read(b / "occupancy_grid.csv"));
}

TEST_F(CliTest, MapBuildFromCarmenLog) {
  const fs::path m = dir("m");
  const Outcome o = hmp("--seed 1 --out-dir " + q(m) + " map-build --carmen " + src("tests/assets/carmen_fixture.log") +
                        " --features 300");
  ASSERT_EQ(o.code, 0) << o.output;
  EXPECT_NO_THROW(load_model_file((m / "model.json").string()));
}

TEST_F(CliTest, MapBuildMissingInputExitsTwo) {
  EXPECT_EQ(hmp("--seed 1 --out-dir " + q(dir()) + " map-build --dataset /nonexistent/data.csv").code, 2);
  const fs::path bad = dir() / "bad.csv";
  std::ofstream(bad) << "x,y,label\n1,2,0\n";
  const Outcome o = hmp("--seed 1 --out-dir " + q(dir()) + " map-build --dataset " + q(bad));
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.output.find("line 2"), std::string::npos) << o.output;
}

// plan

TEST_F(CliTest, PlanConvergesOnSingleObstacle) {
  const fs::path m = dir("m"), p = dir("p");
  ASSERT_EQ(hmp("--seed 0 --out-dir " + q(m) + " map-build --environment " + src("tests/assets/single_obstacle.json"))
                .code,
            0);
  const Outcome o = hmp("--seed 0 --out-dir " + q(p) + " plan --model " + q(m / "model.json") +
                        " --start 0.5 0.5 --goal 9.5 9.5");
  ASSERT_EQ(o.code, 0) << o.output;
  std::ifstream trace_in(p / "trace.csv");
  const auto trace = read_trace_csv(trace_in);
  ASSERT_FALSE(trace.empty());
  EXPECT_GT(reported(o.output, "initial max occupancy"), 0.5);
  EXPECT_LT(trace.back().max_occupancy, 0.5);
  const GpPath path = load_path_file((p / "path.json").string());
  EXPECT_LE((path.query(0.0) - Vector2d(0.5, 0.5)).norm(), 1e-6);
  EXPECT_LE((path.query(1.0) - Vector2d(9.5, 9.5)).norm(), 1e-6);
}

TEST_F(CliTest, PlanStartInsideObstacleExitsFour) {
  const fs::path m = dir("m");
  ASSERT_EQ(hmp("--seed 0 --out-dir " + q(m) + " map-build --environment " + src("tests/assets/single_obstacle.json"))
                .code,
            0);
  const Outcome o = hmp("--seed 0 --out-dir " + q(dir("p")) + " plan --model " + q(m / "model.json") +
                        " --start 5.3 4.7 --goal 9.5 9.5");
  EXPECT_EQ(o.code, 4) << o.output;
}

TEST_F(CliTest, PlanWithoutSmoothnessOnEmptyMapIsStraight) {
  const fs::path model = dir() / "zero.json";
  Eigen::MatrixXd freq = Eigen::MatrixXd::Random(20, 2);
  const OccupancyModel zero(FeatureMap(1.0, freq, Eigen::VectorXd::Zero(20)), Eigen::VectorXd::Zero(20));
  save_model_file(zero, model.string());
  const fs::path p = dir("p");
  const Outcome o = hmp("--seed 4 --out-dir " + q(p) + " plan --model " + q(model) +
                        " --lambda 0 --p-safe 0.6 --iterations 200 --start 1 2 --goal 8 6");
  ASSERT_EQ(o.code, 0) << o.output;
  const GpPath path = load_path_file((p / "path.json").string());
  const Vector2d a(1, 2), b(8, 6);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    EXPECT_LE((path.query(t) - (a + t * (b - a))).norm(), 1e-6) << "t = " << t;
  }
}

TEST_F(CliTest, PlanMissingModelExitsTwo) {
  EXPECT_EQ(hmp("--seed 0 --out-dir " + q(dir()) + " plan --model /nonexistent/model.json").code, 2);
  EXPECT_EQ(hmp("--seed 0 --out-dir " + q(dir()) + " plan").code, 2);
}

// compare

TEST_F(CliTest, CompareNeedsTwoPlanners) {
  const Outcome o =
      hmp("--seed 0 --out-dir " + q(dir()) + " compare --environment " + src("tests/assets/single_obstacle.json") +
          " --planners sfgmp --repetitions 1");
  EXPECT_EQ(o.code, 2);
}

TEST_F(CliTest, CompareWritesTableAndReadableCsv) {
  const fs::path c = dir("c");
  const fs::path config = dir() / "config.json";
  std::ofstream(config) << R"({"map": {"num_features": 300}, "sampling": {"samples": 1500},
                               "sfgmp": {"max_iterations": 200}})";
  const Outcome o = hmp("--seed 11 --config " + q(config) + " --out-dir " + q(c) + " compare --environment " +
                        src("tests/assets/single_obstacle.json") + " --planners sfgmp rrt* prm* --repetitions 2");
  ASSERT_EQ(o.code, 0) << o.output;
  std::ifstream runs_in(c / "runs.csv");
  const auto runs = read_runs_csv(runs_in);
  ASSERT_EQ(runs.size(), 6u);
  for (const auto& r : runs) EXPECT_EQ(r.seed, 11u + static_cast<std::uint64_t>(r.repetition));
  std::ifstream summary_in(c / "summary.csv");
  const auto summaries = read_summary_csv(summary_in);
  ASSERT_EQ(summaries.size(), 3u);
  const auto recomputed = summarize_all(runs);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(summaries[i].planner, recomputed[i].planner);
    EXPECT_DOUBLE_EQ(summaries[i].mean_max_occupancy, recomputed[i].mean_max_occupancy);
    EXPECT_DOUBLE_EQ(summaries[i].std_path_length, recomputed[i].std_path_length);
  }
  for (const char* name : {"sfgmp", "rrt*", "prm*"}) {
    EXPECT_NE(o.output.find(name), std::string::npos) << o.output;
  }
}

TEST_F(CliTest, CompareFailedPlannerWarnsButSucceeds) {
  // The wall model blocks every route for the sampling planners.
  const fs::path model = dir() / "wall.json";
  save_model_file(test::wall_model(), model.string());
  const Outcome o = hmp("--seed 0 --out-dir " + q(dir("c")) + " compare --model " + q(model) +
                        " --planners rrt* fixed-support --repetitions 1 --start 1 5 --goal 9 5");
  EXPECT_EQ(o.code, 0) << o.output;
  EXPECT_NE(o.output.find("warning"), std::string::npos) << o.output;
  EXPECT_NE(o.output.find("failed"), std::string::npos);
}

TEST_F(CliTest, BadConfigFileExitsTwo) {
  const fs::path config = dir() / "config.json";
  std::ofstream(config) << R"({"repetitons": 3})";
  EXPECT_EQ(hmp("--config " + q(config) + " --out-dir " + q(dir()) + " world-gen").code, 2);
  EXPECT_EQ(hmp("--config /nonexistent.json world-gen").code, 2);
}

}  // namespace
}  // namespace hmp
