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

#include "hmcts/tuner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "test_util.hpp"

namespace hmcts {
namespace {

// Interventional coalition value: mean of f over grid points that agree with
// `config` on the features in `mask`.
double CoalitionValue(const FactorGrid& grid, const std::vector<double>& f, size_t config,
                      unsigned mask) {
  const auto x = grid.Coords(config);
  double total = 0.0;
  int count = 0;
  for (size_t z = 0; z < grid.size(); ++z) {
    const auto c = grid.Coords(z);
    bool agree = true;
    for (int k = 0; k < grid.features(); ++k) {
      if ((mask >> k & 1u) && c[static_cast<size_t>(k)] != x[static_cast<size_t>(k)]) agree = false;
    }
    if (agree) {
      total += f[z];
      ++count;
    }
  }
  return total / count;
}

std::vector<double> RandomValues(size_t size, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(size);
  for (auto& x : v) x = g(rng);
  return v;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

TEST(SearchSpaceTest, BuiltinGrid) {
  const auto space = SearchSpace::Builtin();
  EXPECT_EQ(space.size(), 864u);
  const auto configs = GridConfigs(space);
  ASSERT_EQ(configs.size(), 864u);
  const auto& first = configs.front();
  EXPECT_EQ(first.alpha, 0.0);
  EXPECT_EQ(first.beta, 10.0);
  EXPECT_EQ(first.max_depth, 10);
  EXPECT_EQ(first.max_candidate_num, 5);
  EXPECT_EQ(first.param_h, 2);
  EXPECT_TRUE(first.use_heatmap);
  EXPECT_FALSE(configs[1].use_heatmap);
  EXPECT_EQ(configs.back().alpha, 2.0);
  for (size_t i = 0; i < configs.size(); i += 37) EXPECT_EQ(GridIndex(space, configs[i]), i);

  std::set<std::string> distinct;
  for (const auto& c : configs) distinct.insert(WriteParamsConfig(c));
  EXPECT_EQ(distinct.size(), 864u);

  const auto def = GridIndex(space, MctsParams{});
  ASSERT_TRUE(def.has_value());
  EXPECT_EQ(configs[*def], MctsParams{});
}

TEST(SearchSpaceTest, EmptyListRejected) {
  auto space = SearchSpace::Builtin();
  space.beta.clear();
  EXPECT_ERROR_KIND(space.Validate(), ErrorKind::kSpace);
  EXPECT_ERROR_KIND(Tune(space, [](const MctsParams&) { return 0.0; }), ErrorKind::kSpace);
}

TEST(FactorGridTest, CoordsRoundTrip) {
  const FactorGrid g({2, 3, 4});
  EXPECT_EQ(g.size(), 24u);
  EXPECT_EQ(g.Coords(1), (std::vector<int>{0, 0, 1}));
  for (size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.Index(g.Coords(i)), i);
}

TEST(TuneTest, StubArgminAndTies) {
  auto space = SearchSpace::Builtin();
  const auto configs = GridConfigs(space);
  const size_t target = 517;
  const auto report = Tune(space, [&](const MctsParams& p) {
    return p == configs[target] ? 0.1 : 1.0 + p.alpha;
  });
  EXPECT_TRUE(report.full_grid);
  EXPECT_EQ(report.results.size(), 864u);
  EXPECT_EQ(report.best_config().config_id, target);
  EXPECT_EQ(report.results[report.worst].params.alpha, 2.0);
  ASSERT_TRUE(report.default_pos.has_value());
  EXPECT_EQ(report.shapley.size(), 864u);

  const auto flat = Tune(space, [](const MctsParams&) { return 3.0; });
  EXPECT_EQ(flat.best, 0u);
}

TEST(TuneTest, SubsetSkipsShapleyAndIsDeterministic) {
  const auto space = SearchSpace::Builtin();
  TuneOptions opt;
  opt.subset = 50;
  opt.seed = 3;
  auto f = [](const MctsParams& p) { return p.beta + p.param_h; };
  const auto a = Tune(space, f, opt);
  const auto b = Tune(space, f, opt);
  EXPECT_FALSE(a.full_grid);
  EXPECT_TRUE(a.shapley.empty());
  ASSERT_EQ(a.results.size(), 50u);
  for (size_t i = 0; i < 50; ++i) EXPECT_EQ(a.results[i].config_id, b.results[i].config_id);
  for (size_t i = 1; i < 50; ++i) EXPECT_LT(a.results[i - 1].config_id, a.results[i].config_id);
}

TEST(TuneTest, ParallelMatchesSequential) {
  const auto space = SearchSpace::Builtin();
  auto f = [](const MctsParams& p) { return std::sin(p.alpha + p.beta * 0.01 + p.max_depth); };
  TuneOptions par;
  par.jobs = 4;
  const auto a = Tune(space, f);
  const auto b = Tune(space, f, par);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.shapley, b.shapley);
}

TEST(ShapleyTest, NullPlayerGetsZero) {
  const FactorGrid g({2, 3, 2});
  std::vector<double> f(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    const auto c = g.Coords(i);
    f[i] = c[0] * 2.0 + c[1] * c[1];
  }
  for (const auto& phi : ExactShapleyAll(g, f)) EXPECT_NEAR(phi[2], 0.0, 1e-12);
}

TEST(ShapleyTest, AdditiveGameRecoversMainEffects) {
  const FactorGrid g({3, 2, 4});
  const std::vector<std::vector<double>> effect{{0.0, 1.0, 5.0}, {2.0, -1.0}, {0.0, 0.5, 1.0, 4.0}};
  std::vector<double> f(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    const auto c = g.Coords(i);
    for (int k = 0; k < 3; ++k) f[i] += effect[static_cast<size_t>(k)][static_cast<size_t>(c[static_cast<size_t>(k)])];
  }
  for (size_t i = 0; i < g.size(); ++i) {
    const auto c = g.Coords(i);
    const auto phi = ExactShapley(g, f, i);
    for (int k = 0; k < 3; ++k) {
      const auto& e = effect[static_cast<size_t>(k)];
      const double mean = Mean(e);
      EXPECT_NEAR(phi[static_cast<size_t>(k)], e[static_cast<size_t>(c[static_cast<size_t>(k)])] - mean, 1e-12);
    }
  }
}

TEST(ShapleyTest, TwoFeatureGameMatchesPermutationOracle) {
  const FactorGrid g({2, 2});
  const std::vector<double> f{1.0, 4.0, 2.0, 9.0};
  for (size_t x = 0; x < 4; ++x) {
    const auto phi = ExactShapley(g, f, x);
    for (int k = 0; k < 2; ++k) {
      const double expect = oracle::PermutationShapley(
          2, k, [&](unsigned mask) { return CoalitionValue(g, f, x, mask); });
      EXPECT_NEAR(phi[static_cast<size_t>(k)], expect, 1e-12);
    }
  }
}

TEST(ShapleyTest, AxiomsOnRandomGames) {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const FactorGrid g({3, 2, 2, 3});
    auto f = RandomValues(g.size(), seed);
    const double mean = Mean(f);
    const auto all = ExactShapleyAll(g, f);
    for (size_t x = 0; x < g.size(); ++x) {
      double sum = 0.0;
      for (const double p : all[x]) sum += p;
      EXPECT_NEAR(sum, f[x] - mean, 1e-9);
      for (int k = 0; k < 4; ++k) {
        const double expect = oracle::PermutationShapley(
            4, k, [&](unsigned mask) { return CoalitionValue(g, f, x, mask); });
        EXPECT_NEAR(all[x][static_cast<size_t>(k)], expect, 1e-9);
      }
    }
  }
}

TEST(ShapleyTest, SymmetricFeaturesShareCredit) {
  const FactorGrid g({3, 3, 2});
  std::vector<double> f(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    const auto c = g.Coords(i);
    f[i] = std::exp(0.3 * (c[0] + c[1])) + c[2];
  }
  for (size_t i = 0; i < g.size(); ++i) {
    const auto c = g.Coords(i);
    if (c[0] != c[1]) continue;
    const auto phi = ExactShapley(g, f, i);
    EXPECT_NEAR(phi[0], phi[1], 1e-12);
  }
}

TEST(ShapleyTest, CoverageMismatch) {
  const FactorGrid g({2, 2});
  const std::vector<double> f{1.0, 2.0, 3.0};
  EXPECT_ERROR_KIND(ExactShapleyAll(g, f), ErrorKind::kCoverage);
}

TEST(TuningCsvTest, Layout) {
  SearchSpace s;
  s.alpha = {1};
  s.beta = {10, 100};
  s.max_depth = {10};
  s.max_candidate_num = {5};
  s.param_h = {2};
  s.use_heatmap = {true};
  const auto r = Tune(s, [](const MctsParams& p) { return p.beta / 10.0; });
  EXPECT_EQ(TuningCsv(r),
            "config_id,alpha,beta,max_depth,mcn,param_h,use_heatmap,mean_gap\n"
            "0,1,10,10,5,2,true,1\n"
            "1,1,100,10,5,2,true,10\n");
  const auto csv = ShapleyCsv(s, r);
  EXPECT_NE(csv.find("0,beta,10,-4.5"), std::string::npos);
  EXPECT_NE(csv.find("1,beta,100,4.5"), std::string::npos);
  EXPECT_NE(csv.find("0,alpha,1,0\n"), std::string::npos);
}

}  // namespace
}  // namespace hmcts
