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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hmcts/hmcts.hpp"
#include "oracles.hpp"

namespace {

using namespace hmcts;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// Corpus shared by the desk-scale criteria.
constexpr int kSmallN = 12;
constexpr unsigned kCorpusSeed = 1000;
constexpr int kCorpusSize = 200;
constexpr unsigned kHeldOutSeed = 5000;
constexpr int kHeldOutSize = 20;

struct Corpus {
  std::vector<RankTable> ranks;
  std::vector<std::vector<int>> tours;
};

const Corpus& OracleCorpus() {
  static const Corpus corpus = [] {
    Corpus c;
    for (int k = 0; k < kCorpusSize; ++k) {
      const DistanceMatrix dm(GenerateUniform(kSmallN, kCorpusSeed + static_cast<unsigned>(k)),
                              Metric::kEuc2dReal);
      c.ranks.emplace_back(dm);
      c.tours.push_back(ExactSolve(dm).order());
    }
    return c;
  }();
  return corpus;
}

std::vector<Instance> HeldOut() {
  std::vector<Instance> out;
  for (int k = 0; k < kHeldOutSize; ++k) {
    out.push_back(GenerateUniform(kSmallN, kHeldOutSeed + static_cast<unsigned>(k)));
  }
  return out;
}

HeatmapSpec CorpusPriorSpec() {
  HeatmapSpec spec;
  spec.source = HeatmapSpec::GtPrior{
      BuildGtPrior(OracleCorpus().ranks, OracleCorpus().tours), "uniform-n12"};
  spec.text = "gtprior:uniform-n12";
  return spec;
}

Outcome Ac1() {
  std::mt19937 rng(11);
  int matched = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 6 + k % 4;
    const auto pts = oracle::RandomPoints(n, rng());
    std::vector<Point> converted;
    for (const auto& p : pts) converted.push_back({p.x, p.y});
    const DistanceMatrix dm(Instance("ac1", converted, FileSource{}), Metric::kEuc2dReal);
    const auto d = [&](int i, int j) {
      return oracle::Dist(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
    };
    const auto brute = CanonicalOrder(oracle::BruteForceTour(n, d));
    const auto exact = ExactSolve(dm);
    if (exact.order() == brute && exact.length() == TourLength(brute, dm)) ++matched;
  }
  return {matched == 50, Fmt("%d/50 instances match exhaustive enumeration", matched)};
}

Outcome Ac2() {
  long long checked = 0;
  long long bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 20 + (k * 41) % 41;
    const DistanceMatrix dm(GenerateUniform(n, 200 + static_cast<unsigned>(k)),
                            Metric::kEuc2dReal);
    const RankTable ranks(dm);
    MctsParams p;
    Heatmap hm = ZeroHeatmap(n);
    if (k % 2 == 0) {
      p.use_heatmap = false;
    } else {
      hm = PriorToHeatmap(BuiltinPrior("tsp500"), ranks);
    }
    MctsState state(dm, ranks, hm, p, static_cast<std::uint64_t>(k));
    Tour current = SampleInitialTour(state);
    for (int it = 0; it < 30; ++it) {
      const auto move = GenerateKoptMove(state, current);
      if (move) {
        ++checked;
        try {
          const Tour next = ApplyMove(current, *move, dm);
          ValidatePermutation(next.order(), n);
          const double err = std::abs((next.length() - current.length()) - move->delta);
          worst = std::max(worst, err);
          if (err > 1e-6) ++bad;
        } catch (const Error&) {
          ++bad;
        }
      }
      current = AcceptOrRestart(state, current, move);
    }
  }
  return {bad == 0 && checked > 0,
          Fmt("%lld moves checked, %lld invalid, max |dL error| = %.2e", checked, bad, worst)};
}

Outcome Ac3() {
  const auto held = HeldOut();
  const auto gt = RunBenchmark(held, {}, CorpusPriorSpec(), MctsParams{},
                               Budget::Iterations(50'000));
  MctsParams no_hm;
  no_hm.use_heatmap = false;
  const auto zero =
      RunBenchmark(held, {}, HeatmapSpec::Parse("zero"), no_hm, Budget::Iterations(50'000));
  const double g = *gt.mean_gap();
  const double z = *zero.mean_gap();
  return {g <= 2.0 && z <= 5.0,
          Fmt("GT-Prior mean gap %.4f%% (<= 2%%), Zero mean gap %.4f%% (<= 5%%)", g, z)};
}

Outcome Ac4() {
  const auto held = HeldOut();
  SearchSpace space;
  space.alpha = {0.0, 1.0};
  space.beta = {10.0, 100.0};
  space.max_depth = {10};
  space.max_candidate_num = {1000};
  space.param_h = {2, 10};
  space.use_heatmap = {true};
  const auto rep = Tune(held, {}, CorpusPriorSpec(), space, Budget::Iterations(200));
  if (!rep.default_pos) return {false, "default config missing from the grid"};
  const double best = rep.best_config().mean_gap;
  const double def = rep.results[*rep.default_pos].mean_gap;
  return {best <= def, Fmt("best config %zu mean gap %.4f%% vs default %.4f%% (8 configs)",
                           rep.best_config().config_id, best, def)};
}

Outcome Ac5() {
  bool ok = true;
  std::string detail;
  for (const auto name : BuiltinPriorNames()) {
    const auto& m = BuiltinPrior(name).masses;
    const double sum = std::accumulate(m.begin(), m.end(), 0.0);
    const double top5 = CumulativeMass(m, 5);
    ok = ok && std::abs(sum - 1.0) <= 1e-6 && top5 > 0.94;
    detail += Fmt("%s sum=%.9f top5=%.6f; ", std::string(name).c_str(), sum, top5);
  }
  const double k1 = CumulativeMass(BuiltinPrior("tsp500").masses, 1);
  ok = ok && k1 == 0.440078125;
  detail += Fmt("tsp500 k=1 %.9f", k1);
  return {ok, detail};
}

Outcome Ac6() {
  std::vector<EmpiricalDistribution> dists;
  const auto& c = OracleCorpus();
  for (size_t k = 0; k < c.tours.size(); ++k) {
    dists.push_back(PerInstanceDistribution(c.ranks[k], c.tours[k]));
  }
  const double top5 = CumulativeMass(Aggregate(dists), 5);
  return {top5 >= 0.90, Fmt("top-5 cumulative mass %.6f over %d exact tours", top5, kCorpusSize)};
}

Outcome Ac7() {
  struct Pair {
    const char* row;
    double length;
    double ref;
    double printed;
    bool pinned;
  };
  // Lengths and gaps as printed in the results table; references are the
  // starred baselines of each column.
  const std::vector<Pair> pairs = {
      {"Zero/500", 16.66, 16.55, 0.66, true},      {"Att-GCN/500", 16.66, 16.55, 0.69, false},
      {"DIMES/500", 16.66, 16.55, 0.43, false},    {"UTSP/500", 16.69, 16.55, 0.90, false},
      {"SoftDist/500", 16.62, 16.55, 0.43, false}, {"DIFUSCO/500", 16.60, 16.55, 0.33, false},
      {"GT-Prior/500", 16.63, 16.55, 0.50, true},  {"Zero/1000", 23.39, 23.12, 1.16, true},
      {"Att-GCN/1000", 23.37, 23.12, 1.09, false}, {"DIMES/1000", 23.37, 23.12, 1.11, false},
      {"UTSP/1000", 23.47, 23.12, 1.53, false},    {"SoftDist/1000", 23.30, 23.12, 0.80, false},
      {"DIFUSCO/1000", 23.24, 23.12, 0.53, false}, {"GT-Prior/1000", 23.31, 23.12, 0.85, true},
      {"Zero/10000", 74.50, 71.78, 3.79, true},    {"Att-GCN/10000", 73.95, 71.78, 3.02, false},
      {"DIMES/10000", 73.97, 71.78, 3.05, false},  {"SoftDist/10000", 73.89, 71.78, 2.94, false},
      {"DIFUSCO/10000", 73.47, 71.78, 2.36, false}, {"GT-Prior/10000", 73.31, 71.78, 2.13, true},
  };
  int pinned_ok = 0;
  int pinned = 0;
  int all_ok = 0;
  std::string outliers;
  for (const auto& p : pairs) {
    const bool within = std::abs(OptimalityGap(p.length, p.ref) - p.printed) <= 0.03;
    all_ok += within;
    if (!within) outliers += Fmt(" %s(%.3f vs %.2f)", p.row, OptimalityGap(p.length, p.ref), p.printed);
    if (p.pinned) {
      ++pinned;
      pinned_ok += within;
    }
  }
  const bool example = std::abs(OptimalityGap(23.39, 23.12) - 1.1678) < 1e-4 &&
                       std::abs(OptimalityGap(16.63, 16.55) - 0.4834) < 1e-4;
  return {pinned_ok == pinned && example,
          Fmt("GT-Prior/Zero pairs %d/%d within 0.03 pp; all rows %d/%zu, outside:", pinned_ok,
              pinned, all_ok, pairs.size()) +
              (outliers.empty() ? std::string(" none") : outliers)};
}

Outcome Ac8() {
  const auto space = SearchSpace::Builtin();
  const auto lv = space.levels();
  const FactorGrid grid(std::vector<int>(lv.begin(), lv.end()));
  // Features 2 and 3 enter symmetrically; feature 5 is a dummy.
  std::vector<double> f(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto c = grid.Coords(i);
    f[i] = std::sin(c[0] + 0.5) + c[1] * c[4] + std::exp(0.2 * (c[2] + c[3])) + c[2] * c[3];
  }
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  const auto phi = ExactShapleyAll(grid, f);
  double eff = 0.0;
  double dummy = 0.0;
  double sym = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto c = grid.Coords(i);
    eff = std::max(eff, std::abs(std::accumulate(phi[i].begin(), phi[i].end(), 0.0) - (f[i] - mean)));
    dummy = std::max(dummy, std::abs(phi[i][5]));
    if (c[2] == c[3]) sym = std::max(sym, std::abs(phi[i][2] - phi[i][3]));
  }
  return {eff <= 1e-9 && dummy < 1e-9 && sym <= 1e-9,
          Fmt("864 configs: max efficiency error %.1e, max |dummy phi| %.1e, max symmetric diff %.1e",
              eff, dummy, sym)};
}

Outcome Ac9() {
  const double z = PotentialValue(50, 100, 1.0, 1, 0);
  const double dw = WeightIncrement(10, 100, 90);
  const double ez = 0.5 + std::sqrt(std::log(2.0));
  const double edw = 10.0 * (std::exp(0.1) - 1.0);
  return {std::abs(z - ez) <= 1e-9 && std::abs(dw - edw) <= 1e-9,
          Fmt("potential %.12f (expect %.12f), increment %.12f (expect %.12f)", z, ez, dw, edw)};
}

Outcome Ac10() {
  std::vector<Instance> set;
  for (int k = 0; k < 8; ++k) set.push_back(GenerateUniform(40, 900 + static_cast<unsigned>(k)));
  std::vector<std::optional<std::vector<int>>> refs;
  for (int k = 0; k < 8; ++k) {
    std::vector<int> id(40);
    std::iota(id.begin(), id.end(), 0);
    refs.emplace_back(id);
  }
  const auto spec = HeatmapSpec::Parse("gtprior:tsp500");
  BenchmarkOptions one;
  one.seed = 123;
  BenchmarkOptions eight = one;
  eight.jobs = 8;
  const auto a = RunBenchmark(set, refs, spec, {}, Budget::Iterations(2000), one);
  const auto b = RunBenchmark(set, refs, spec, {}, Budget::Iterations(2000), one);
  const auto c = RunBenchmark(set, refs, spec, {}, Budget::Iterations(2000), eight);
  bool same = a.SameResults(b) && a.SameResults(c);
  for (size_t i = 0; i < a.rows.size(); ++i) {
    same = same && a.rows[i].best_order == b.rows[i].best_order &&
           a.rows[i].best_order == c.rows[i].best_order;
  }
  return {same, "8 instances, repeat run and --jobs 1 vs 8 " +
                    std::string(same ? "bit-identical" : "differ")};
}

Outcome Ac11() {
  const std::string dir = HMCTS_TEST_DATA_DIR;
  const auto inst = ReadInstanceFile(dir + "/eil51.tsp");
  const auto tour = ReadTourFile(dir + "/eil51.opt.tour");
  const double len = TourLength(tour, DistanceMatrix(inst, Metric::kEuc2dInt));
  return {inst.n() == 51 && len == 426.0, Fmt("n=%d, optimal tour length %.1f", inst.n(), len)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 oracle equivalence", Ac1},   {"AC2 move correctness", Ac2},
      {"AC3 desk-scale quality", Ac3},   {"AC4 tuning dominance", Ac4},
      {"AC5 published priors", Ac5},     {"AC6 k-NN locality", Ac6},
      {"AC7 gap arithmetic", Ac7},       {"AC8 Shapley axioms", Ac8},
      {"AC9 potential/update points", Ac9}, {"AC10 determinism", Ac10},
      {"AC11 TSPLIB eil51", Ac11},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
