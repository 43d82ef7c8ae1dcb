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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hmp/errors.hpp"
#include "hmp/experiment.hpp"
#include "test_util.hpp"

namespace hmp {
namespace {

using Eigen::Vector2d;
using nlohmann::json;

RunRecord run(PlannerKind p, int rep, bool ok, double occ, double len, double secs = 0.1) {
  RunRecord r;
  r.planner = p;
  r.repetition = rep;
  r.seed = 100 + static_cast<std::uint64_t>(rep);
  r.success = ok;
  r.status = ok ? "path-found" : "failed";
  r.max_occupancy = occ;
  r.path_length = len;
  r.wall_seconds = secs;
  if (!ok) r.error = "no path, after 10 tries";
  return r;
}

ExperimentConfig quick_config() {
  ExperimentConfig c;
  c.repetitions = 2;
  c.base_seed = 40;
  c.sfgmp.max_iterations = 300;
  c.sampling.samples = 400;
  return c;
}

// Configuration

TEST(ExperimentConfig, JsonRoundTrip) {
  ExperimentConfig c;
  c.world.source = WorldSource::kCarmenLog;
  c.world.path = "log.txt";
  c.map.gamma = 7.5;
  c.map.raycast.free_spacing = 0.2;
  c.planners = {PlannerKind::kPrmStar, PlannerKind::kFixedSupport};
  c.fixed_support.support_size = 7;
  c.fixed_support.metric = Eigen::MatrixXd::Identity(5, 5) * 2.0;
  c.sampling.step = 0.4;
  c.sfgmp.lambda = 0.02;
  c.repetitions = 3;
  c.base_seed = 99;
  c.start = Vector2d(1.25, 2.5);
  c.output_dir = "out";
  const json j = c;
  const ExperimentConfig back = j.get<ExperimentConfig>();
  EXPECT_EQ(json(back), j);
  EXPECT_EQ(back.world.source, WorldSource::kCarmenLog);
  EXPECT_EQ(back.planners, c.planners);
  EXPECT_EQ(back.fixed_support.metric, c.fixed_support.metric);
  EXPECT_EQ(back.start, c.start);
  EXPECT_EQ(back.base_seed, 99u);
}

TEST(ExperimentConfig, PartialJsonKeepsDefaults) {
  const ExperimentConfig c = json::parse(R"({"repetitions": 4})").get<ExperimentConfig>();
  EXPECT_EQ(c.repetitions, 4);
  EXPECT_EQ(c.planners.size(), 3u);
  EXPECT_EQ(c.map.num_features, MapConfig{}.num_features);
}

TEST(ExperimentConfig, UnknownKeysRejected) {
  EXPECT_THROW(json::parse(R"({"repetitons": 4})").get<ExperimentConfig>(), FormatError);
  EXPECT_THROW(json::parse(R"({"map": {"gama": 4}})").get<ExperimentConfig>(), FormatError);
  EXPECT_THROW(json::parse(R"({"planners": ["sfgmp", "astar"]})").get<ExperimentConfig>(), FormatError);
}

TEST(ExperimentConfig, ShippedConfigsLoad) {
  for (const char* f : {"data/world8_compare.json", "data/passage_compare.json"}) {
    ExperimentConfig c = load_experiment_config_file(test::source_path(f));
    EXPECT_EQ(c.repetitions, 5) << f;
    EXPECT_GE(c.planners.size(), 3u);
    c.world.path = test::source_path(c.world.path);
    EXPECT_NO_THROW(c.validate());
  }
}

TEST(ExperimentConfig, ValidateRejectsBadValues) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.repetitions = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.planners.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.world.source = WorldSource::kEnvironmentFile;
  c.world.path = "/nonexistent/world.json";
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(load_experiment_config_file("/nonexistent/config.json"), std::invalid_argument);
}

TEST(ExperimentConfig, PlannerNames) {
  EXPECT_EQ(planner_from_string("sfgmp"), PlannerKind::kSfgmp);
  EXPECT_EQ(planner_from_string("rrt*"), PlannerKind::kRrtStar);
  EXPECT_EQ(planner_from_string("rrtstar"), PlannerKind::kRrtStar);
  EXPECT_EQ(planner_from_string("prmstar"), PlannerKind::kPrmStar);
  EXPECT_EQ(planner_from_string("fixed-support"), PlannerKind::kFixedSupport);
  for (auto p : {PlannerKind::kSfgmp, PlannerKind::kRrtStar, PlannerKind::kPrmStar, PlannerKind::kFixedSupport}) {
    EXPECT_EQ(planner_from_string(to_string(p)), p);
  }
  EXPECT_THROW(planner_from_string("dijkstra"), std::invalid_argument);
}

// Aggregation

TEST(Summary, SingleRunHasZeroStd) {
  const PlannerSummary s = summarize(PlannerKind::kSfgmp, {run(PlannerKind::kSfgmp, 0, true, 0.3, 12.0)});
  EXPECT_EQ(s.runs, 1);
  EXPECT_EQ(s.mean_max_occupancy, 0.3);
  EXPECT_EQ(s.std_max_occupancy, 0.0);
  EXPECT_EQ(s.std_path_length, 0.0);
}

TEST(Summary, SampleStatisticsOverSuccessfulRuns) {
  const std::vector<RunRecord> runs = {
      run(PlannerKind::kRrtStar, 0, true, 0.2, 10.0), run(PlannerKind::kRrtStar, 1, false, 0.9, 99.0),
      run(PlannerKind::kRrtStar, 2, true, 0.4, 14.0), run(PlannerKind::kSfgmp, 0, true, 0.1, 1.0)};
  const PlannerSummary s = summarize(PlannerKind::kRrtStar, runs);
  EXPECT_EQ(s.runs, 3);
  EXPECT_EQ(s.failures, 1);
  EXPECT_FALSE(s.failed());
  EXPECT_NEAR(s.mean_max_occupancy, 0.3, 1e-15);
  EXPECT_NEAR(s.std_max_occupancy, std::sqrt(0.02), 1e-15);  // ((0.1^2 + 0.1^2) / 1)^(1/2)
  EXPECT_NEAR(s.mean_path_length, 12.0, 1e-15);
  EXPECT_NEAR(s.std_path_length, std::sqrt(8.0), 1e-14);
}

TEST(Summary, AllFailedIsMarkedFailed) {
  const std::vector<RunRecord> runs = {run(PlannerKind::kPrmStar, 0, false, 0, 0),
                                       run(PlannerKind::kPrmStar, 1, false, 0, 0)};
  const PlannerSummary s = summarize(PlannerKind::kPrmStar, runs);
  EXPECT_TRUE(s.failed());
  EXPECT_EQ(s.failures, 2);
  std::ostringstream table;
  write_summary_table({s}, table);
  EXPECT_NE(table.str().find("failed"), std::string::npos);
}

TEST(Summary, SummarizeAllKeepsFirstAppearanceOrder) {
  const std::vector<RunRecord> runs = {run(PlannerKind::kPrmStar, 0, true, 0.1, 1),
                                       run(PlannerKind::kSfgmp, 0, true, 0.1, 1),
                                       run(PlannerKind::kPrmStar, 1, true, 0.1, 1)};
  const auto all = summarize_all(runs);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].planner, PlannerKind::kPrmStar);
  EXPECT_EQ(all[0].runs, 2);
  EXPECT_EQ(all[1].planner, PlannerKind::kSfgmp);
}

// CSV

TEST(ReportCsv, RunsRoundTrip) {
  const std::vector<RunRecord> runs = {run(PlannerKind::kSfgmp, 0, true, 0.123456789012345, 12.5, 0.01),
                                       run(PlannerKind::kFixedSupport, 1, false, 0, 0)};
  std::ostringstream out;
  write_runs_csv(runs, out);
  std::istringstream in(out.str());
  const auto back = read_runs_csv(in);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    EXPECT_EQ(back[i].planner, runs[i].planner);
    EXPECT_EQ(back[i].repetition, runs[i].repetition);
    EXPECT_EQ(back[i].seed, runs[i].seed);
    EXPECT_EQ(back[i].success, runs[i].success);
    EXPECT_EQ(back[i].status, runs[i].status);
    EXPECT_EQ(back[i].max_occupancy, runs[i].max_occupancy);
    EXPECT_EQ(back[i].path_length, runs[i].path_length);
    EXPECT_EQ(back[i].wall_seconds, runs[i].wall_seconds);
    EXPECT_EQ(back[i].error, runs[i].error);
  }
}

TEST(ReportCsv, SummaryRoundTrip) {
  const auto summaries = summarize_all({run(PlannerKind::kSfgmp, 0, true, 0.3, 12.0),
                                        run(PlannerKind::kSfgmp, 1, true, 0.35, 12.5),
                                        run(PlannerKind::kRrtStar, 0, false, 0, 0)});
  std::ostringstream out;
  write_summary_csv(summaries, out);
  std::istringstream in(out.str());
  const auto back = read_summary_csv(in);
  ASSERT_EQ(back.size(), summaries.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].planner, summaries[i].planner);
    EXPECT_EQ(back[i].runs, summaries[i].runs);
    EXPECT_EQ(back[i].failures, summaries[i].failures);
    EXPECT_EQ(back[i].mean_max_occupancy, summaries[i].mean_max_occupancy);
    EXPECT_EQ(back[i].std_max_occupancy, summaries[i].std_max_occupancy);
    EXPECT_EQ(back[i].mean_path_length, summaries[i].mean_path_length);
    EXPECT_EQ(back[i].std_path_length, summaries[i].std_path_length);
  }
}

TEST(ReportCsv, MalformedRowsRejected) {
  std::istringstream in("planner,repetition,seed,success,status,max_occupancy,path_length,wall_seconds,error\n"
                        "sfgmp,0,1,1,converged,abc,1,1,\n");
  EXPECT_THROW(read_runs_csv(in), FormatError);
}

// Comparison runs

TEST(Comparison, NeedsTwoPlanners) {
  ExperimentConfig c = quick_config();
  c.planners = {PlannerKind::kSfgmp};
  EXPECT_THROW(run_comparison(test::constant_model(0.1), c), std::invalid_argument);
}

TEST(Comparison, ThreeRowTableOnOpenMap) {
  const OccupancyModel map = test::constant_model(0.1);
  ExperimentConfig c = quick_config();
  int observed = 0;
  const ComparisonReport report = run_comparison(map, c, [&](const RunRecord&) { ++observed; });
  ASSERT_EQ(report.runs.size(), 6u);
  EXPECT_EQ(observed, 6);
  for (const auto& r : report.runs) {
    EXPECT_TRUE(r.success) << r.error;
    EXPECT_EQ(r.seed, c.base_seed + static_cast<std::uint64_t>(r.repetition));
    EXPECT_NEAR(r.max_occupancy, 0.1, 1e-9);
    EXPECT_GE(r.path_length, std::sqrt(2.0) * 9.0 - 1e-6);
  }
  ASSERT_EQ(report.summaries.size(), 3u);
  std::ostringstream table;
  write_summary_table(report.summaries, table);
  std::istringstream lines(table.str());
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[0].find("max occupancy"), std::string::npos);
  EXPECT_NE(rows[0].find("path length"), std::string::npos);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NE(rows[i].find("+/-"), std::string::npos) << rows[i];
  }
}

TEST(Comparison, AggregatesRecomputableFromRawRows) {
  ExperimentConfig c = quick_config();
  c.repetitions = 3;
  c.planners = {PlannerKind::kRrtStar, PlannerKind::kPrmStar};
  const ComparisonReport report = run_comparison(test::wall_model(), c);
  std::ostringstream out;
  write_runs_csv(report.runs, out);
  std::istringstream in(out.str());
  const auto recomputed = summarize_all(read_runs_csv(in));
  ASSERT_EQ(recomputed.size(), report.summaries.size());
  for (std::size_t i = 0; i < recomputed.size(); ++i) {
    EXPECT_EQ(recomputed[i].runs, report.summaries[i].runs);
    EXPECT_EQ(recomputed[i].failures, report.summaries[i].failures);
    EXPECT_EQ(recomputed[i].mean_max_occupancy, report.summaries[i].mean_max_occupancy);
    EXPECT_EQ(recomputed[i].std_path_length, report.summaries[i].std_path_length);
  }
}

TEST(Comparison, FailedPlannerRowMarkedFailed) {
  // A full-height wall blocks every collision-free route.
  ExperimentConfig c = quick_config();
  c.start = Vector2d(1.0, 5.0);
  c.goal = Vector2d(9.0, 5.0);
  c.planners = {PlannerKind::kRrtStar, PlannerKind::kFixedSupport};
  const ComparisonReport report = run_comparison(test::wall_model(), c);
  ASSERT_EQ(report.summaries.size(), 2u);
  EXPECT_TRUE(report.summaries[0].failed());
  EXPECT_EQ(report.summaries[0].failures, 2);
  for (const auto& r : report.runs) {
    if (r.planner == PlannerKind::kRrtStar) {
      EXPECT_EQ(r.status, "failed");
      EXPECT_FALSE(r.error.empty());
    }
  }
  EXPECT_FALSE(report.summaries[1].failed());
  std::ostringstream table;
  write_summary_table(report.summaries, table);
  EXPECT_NE(table.str().find("failed"), std::string::npos);
}

TEST(Comparison, SameSeedsSameResults) {
  ExperimentConfig c = quick_config();
  c.planners = {PlannerKind::kRrtStar, PlannerKind::kPrmStar};
  const OccupancyModel map = test::constant_model(0.2);
  const auto a = run_comparison(map, c);
  const auto b = run_comparison(map, c);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    EXPECT_EQ(a.runs[i].path_length, b.runs[i].path_length);
    EXPECT_EQ(a.runs[i].max_occupancy, b.runs[i].max_occupancy);
  }
}

// Map building

TEST(MapBuild, GeneratedWorldTrainsAccurately) {
  WorldSpec world;
  world.seed = 7;
  MapConfig config;
  config.num_features = 500;
  const BuiltMap built = build_map(world, config);
  ASSERT_TRUE(built.environment.has_value());
  EXPECT_EQ(built.environment->obstacles.size(), 8u);
  EXPECT_GE(training_accuracy(built.model, built.data), 0.9);
}

TEST(MapBuild, DataBoundsAndGridRoundTrip) {
  LabeledPointCloud cloud;
  cloud.samples.push_back({Eigen::VectorXd(Vector2d(1, 2)), 1});
  cloud.samples.push_back({Eigen::VectorXd(Vector2d(3, -1)), -1});
  const Bounds b = data_bounds(cloud, 0.5);
  EXPECT_EQ(b.min, Vector2d(0.5, -1.5));
  EXPECT_EQ(b.max, Vector2d(3.5, 2.5));
  EXPECT_THROW(data_bounds(LabeledPointCloud{}, 0.5), std::invalid_argument);

  const OccupancyModel model = test::wall_model();
  std::ostringstream out;
  write_occupancy_grid_csv(model, Bounds{Vector2d(0, 0), Vector2d(2, 1)}, 0.5, out);
  std::istringstream in(out.str());
  const auto grid = read_occupancy_grid_csv(in);
  ASSERT_EQ(grid.size(), 8u);
  for (const auto& g : grid) {
    EXPECT_NEAR(g.occupancy, model.predict(Vector2d(g.x, g.y)), 1e-9);
  }
}

}  // namespace
}  // namespace hmp
