// Copyright 2026 The hmcts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hmcts/eval.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "test_util.hpp"

namespace hmcts {
namespace {

std::vector<Instance> SmallSet(int count, int n, unsigned seed0) {
  std::vector<Instance> out;
  for (int k = 0; k < count; ++k) out.push_back(GenerateUniform(n, seed0 + static_cast<unsigned>(k)));
  return out;
}

TEST(OptimalityGapTest, PointValues) {
  EXPECT_NEAR(OptimalityGap(110, 100), 10.0, 1e-12);
  EXPECT_EQ(OptimalityGap(100, 100), 0.0);
  EXPECT_LT(OptimalityGap(99, 100), 0.0);
  EXPECT_NEAR(OptimalityGap(16.63, 16.55), 0.4834, 5e-5);
  EXPECT_NEAR(OptimalityGap(23.39, 23.12), 1.1678, 5e-5);
  EXPECT_ERROR_KIND(OptimalityGap(1, 0), ErrorKind::kReference);
  EXPECT_ERROR_KIND(OptimalityGap(1, -2), ErrorKind::kReference);
}

TEST(OptimalityGapTest, ScaleInvariant) {
  for (const double s : {0.001, 3.0, 1e6}) {
    EXPECT_NEAR(OptimalityGap(17.3 * s, 16.2 * s), OptimalityGap(17.3, 16.2), 1e-9);
  }
}

TEST(ImprovementTest, PointValues) {
  EXPECT_NEAR(Improvement(1.12, 0.22), 0.90, 1e-12);
  EXPECT_NEAR(Improvement(5.49, 1.06), 4.43, 1e-12);
  EXPECT_EQ(Improvement(0.7, 0.7), 0.0);
  EXPECT_LT(Improvement(0.5, 0.7), 0.0);
}

TEST(ResultTableTest, EmptyAndStatistics) {
  ResultTable t;
  EXPECT_FALSE(t.mean_gap().has_value());
  EXPECT_FALSE(t.min_gap().has_value());
  for (const double g : {1.0, 3.0, 2.0}) {
    GapReport r;
    r.gap_percent = g;
    t.rows.push_back(r);
  }
  EXPECT_DOUBLE_EQ(*t.mean_gap(), 2.0);
  EXPECT_EQ(*t.min_gap(), 1.0);
  EXPECT_EQ(*t.max_gap(), 3.0);
}

TEST(HeatmapSpecTest, ParsesForms) {
  EXPECT_TRUE(std::holds_alternative<HeatmapSpec::Zero>(HeatmapSpec::Parse("zero").source));
  const auto sd = HeatmapSpec::Parse("softdist:0.05");
  EXPECT_EQ(std::get<HeatmapSpec::SoftDist>(sd.source).tau, 0.05);
  EXPECT_EQ(std::get<HeatmapSpec::SoftDist>(sd.source).k_keep, 20);
  EXPECT_EQ(std::get<HeatmapSpec::SoftDist>(HeatmapSpec::Parse("softdist:1:7").source).k_keep, 7);
  EXPECT_EQ(HeatmapSpec::Parse("gtprior:tsp500").label(), "gtprior:tsp500");
  EXPECT_EQ(sd.label(), "softdist:0.05");
  EXPECT_ERROR_KIND(HeatmapSpec::Parse("gaussian"), ErrorKind::kParameter);
  EXPECT_ERROR_KIND(HeatmapSpec::Parse("softdist:-1"), ErrorKind::kParameter);
  EXPECT_ERROR_KIND(HeatmapSpec::Parse("gtprior:/no/such/prior.txt"), ErrorKind::kIo);
}

TEST(RunBenchmarkTest, ExactOracleReferencesAndSeeds) {
  const auto set = SmallSet(4, 9, 300);
  MctsParams p;
  p.use_heatmap = false;
  BenchmarkOptions opt;
  opt.seed = 40;
  const auto t =
      RunBenchmark(set, {}, HeatmapSpec::Parse("zero"), p, Budget::Iterations(300), opt);
  ASSERT_EQ(t.rows.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    const auto& r = t.rows[i];
    EXPECT_EQ(r.instance_id, set[i].id());
    EXPECT_EQ(r.seed, 40u + i);
    EXPECT_EQ(r.heatmap, "zero");
    EXPECT_EQ(r.config_id, "default");
    const DistanceMatrix dm(set[i], Metric::kEuc2dReal);
    EXPECT_EQ(r.reference_length, ExactSolve(dm).length());
    EXPECT_GE(r.gap_percent, -1e-9);
    EXPECT_NEAR(r.solver_length, TourLength(r.best_order, dm), 1e-12);
  }
}

TEST(RunBenchmarkTest, DeterministicAcrossJobCounts) {
  const auto set = SmallSet(6, 12, 700);
  MctsParams p;
  BenchmarkOptions one;
  one.seed = 9;
  BenchmarkOptions many = one;
  many.jobs = 4;
  const auto spec = HeatmapSpec::Parse("softdist:0.05:5");
  const auto a = RunBenchmark(set, {}, spec, p, Budget::Iterations(200), one);
  const auto b = RunBenchmark(set, {}, spec, p, Budget::Iterations(200), many);
  const auto c = RunBenchmark(set, {}, spec, p, Budget::Iterations(200), one);
  EXPECT_TRUE(a.SameResults(b));
  EXPECT_TRUE(a.SameResults(c));
  for (size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].best_order, b.rows[i].best_order);
}

TEST(RunBenchmarkTest, MissingReferenceAndAlignment) {
  const std::vector<Instance> big{GenerateUniform(19, 1)};
  EXPECT_ERROR_KIND(RunBenchmark(big, {}, HeatmapSpec::Parse("zero"), {}, Budget::Iterations(1)),
                    ErrorKind::kMissingReference);
  const std::vector<std::optional<std::vector<int>>> refs(2);
  EXPECT_ERROR_KIND(
      RunBenchmark(big, refs, HeatmapSpec::Parse("zero"), {}, Budget::Iterations(1)),
      ErrorKind::kAlignment);
}

TEST(RunBenchmarkTest, SuppliedReferenceTourIsUsed) {
  const std::vector<Instance> set{GenerateUniform(30, 5)};
  std::vector<int> identity(30);
  for (int i = 0; i < 30; ++i) identity[static_cast<size_t>(i)] = i;
  const std::vector<std::optional<std::vector<int>>> refs{identity};
  const auto t =
      RunBenchmark(set, refs, HeatmapSpec::Parse("zero"), {}, Budget::Iterations(50));
  const DistanceMatrix dm(set[0], Metric::kEuc2dReal);
  EXPECT_EQ(t.rows[0].reference_length, TourLength(identity, dm));
}

TEST(ResultsCsvTest, RoundTripAndMarkdown) {
  const auto set = SmallSet(3, 8, 1);
  auto t = RunBenchmark(set, {}, HeatmapSpec::Parse("gtprior:tsp500"), {}, Budget::Iterations(30));
  const auto back = ParseResultsCsv(ResultsCsv(t));
  EXPECT_TRUE(back.SameResults(t));
  for (size_t i = 0; i < t.rows.size(); ++i) EXPECT_EQ(back.rows[i].wall_time, t.rows[i].wall_time);
  EXPECT_ERROR_KIND(ParseResultsCsv("a,b\n"), ErrorKind::kFormat);
  EXPECT_ERROR_KIND(ParseResultsCsv(""), ErrorKind::kFormat);

  const auto md = MarkdownReport(t);
  EXPECT_NE(md.find("| gtprior:tsp500 | default | 3 |"), std::string::npos);
}

}  // namespace
}  // namespace hmcts
