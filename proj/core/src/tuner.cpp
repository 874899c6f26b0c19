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

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

#include "hmcts/error.hpp"
#include "hmcts/parallel.hpp"
#include "text_util.hpp"

namespace hmcts {
namespace {

template <typename T>
std::optional<int> LevelOf(const std::vector<T>& values, T v) {
  const auto it = std::find(values.begin(), values.end(), v);
  if (it == values.end()) return std::nullopt;
  return static_cast<int>(it - values.begin());
}

// s! (F - s - 1)! / F!
double ShapleyWeight(int s, int features) {
  double w = 1.0 / features;
  // 1 / (F * C(F-1, s))
  for (int k = 1; k <= s; ++k) w *= static_cast<double>(k) / (features - k);
  return w;
}

}  // namespace

SearchSpace SearchSpace::Builtin() {
  SearchSpace s;
  s.alpha = {0, 1, 2};
  s.beta = {10, 100, 150};
  s.max_depth = {10, 50, 100, 200};
  s.max_candidate_num = {5, 20, 50, 1000};
  s.param_h = {2, 5, 10};
  s.use_heatmap = {true, false};
  return s;
}

std::array<int, kNumTunedParams> SearchSpace::levels() const {
  return {static_cast<int>(alpha.size()),     static_cast<int>(beta.size()),
          static_cast<int>(max_depth.size()), static_cast<int>(max_candidate_num.size()),
          static_cast<int>(param_h.size()),   static_cast<int>(use_heatmap.size())};
}

size_t SearchSpace::size() const {
  size_t total = 1;
  for (const int l : levels()) total *= static_cast<size_t>(l);
  return total;
}

void SearchSpace::Validate() const {
  const auto lv = levels();
  for (int f = 0; f < kNumTunedParams; ++f) {
    if (lv[static_cast<size_t>(f)] == 0) {
      throw Error(ErrorKind::kSpace, "no values for " + std::string(kTunedParamNames[static_cast<size_t>(f)]));
    }
  }
}

std::string SearchSpace::ValueText(int feature, int level) const {
  const auto l = static_cast<size_t>(level);
  switch (feature) {
    case 0: return internal::FormatDouble(alpha[l]);
    case 1: return internal::FormatDouble(beta[l]);
    case 2: return std::to_string(max_depth[l]);
    case 3: return std::to_string(max_candidate_num[l]);
    case 4: return std::to_string(param_h[l]);
    default: return use_heatmap[l] ? "true" : "false";
  }
}

std::vector<MctsParams> GridConfigs(const SearchSpace& space) {
  space.Validate();
  const auto lv = space.levels();
  const FactorGrid grid(std::vector<int>(lv.begin(), lv.end()));
  std::vector<MctsParams> out;
  out.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto c = grid.Coords(i);
    MctsParams p = space.base;
    p.alpha = space.alpha[static_cast<size_t>(c[0])];
    p.beta = space.beta[static_cast<size_t>(c[1])];
    p.max_depth = space.max_depth[static_cast<size_t>(c[2])];
    p.max_candidate_num = space.max_candidate_num[static_cast<size_t>(c[3])];
    p.param_h = space.param_h[static_cast<size_t>(c[4])];
    p.use_heatmap = space.use_heatmap[static_cast<size_t>(c[5])];
    out.push_back(p);
  }
  return out;
}

std::optional<size_t> GridIndex(const SearchSpace& space, const MctsParams& p) {
  const std::array<std::optional<int>, kNumTunedParams> coords = {
      LevelOf(space.alpha, p.alpha),
      LevelOf(space.beta, p.beta),
      LevelOf(space.max_depth, p.max_depth),
      LevelOf(space.max_candidate_num, p.max_candidate_num),
      LevelOf(space.param_h, p.param_h),
      LevelOf(space.use_heatmap, p.use_heatmap)};
  std::vector<int> c;
  for (const auto& v : coords) {
    if (!v) return std::nullopt;
    c.push_back(*v);
  }
  const auto lv = space.levels();
  return FactorGrid(std::vector<int>(lv.begin(), lv.end())).Index(c);
}

FactorGrid::FactorGrid(std::vector<int> levels) : levels_(std::move(levels)) {
  for (const int l : levels_) {
    if (l < 1) throw Error(ErrorKind::kSpace, "every factor needs at least one level");
    size_ *= static_cast<size_t>(l);
  }
}

std::vector<int> FactorGrid::Coords(size_t index) const {
  std::vector<int> c(levels_.size());
  for (size_t f = levels_.size(); f-- > 0;) {
    c[f] = static_cast<int>(index % static_cast<size_t>(levels_[f]));
    index /= static_cast<size_t>(levels_[f]);
  }
  return c;
}

size_t FactorGrid::Index(std::span<const int> coords) const {
  size_t index = 0;
  for (size_t f = 0; f < levels_.size(); ++f) {
    index = index * static_cast<size_t>(levels_[f]) + static_cast<size_t>(coords[f]);
  }
  return index;
}

std::vector<std::vector<double>> ExactShapleyAll(const FactorGrid& grid,
                                                 std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorKind::kCoverage, "values cover " + std::to_string(values.size()) +
                                          " of " + std::to_string(grid.size()) +
                                          " grid points");
  }
  const int nf = grid.features();
  if (nf > 20) throw Error(ErrorKind::kSpace, "too many features for exact Shapley");
  const size_t coalitions = size_t{1} << nf;

  std::vector<std::vector<int>> coords(grid.size());
  for (size_t g = 0; g < grid.size(); ++g) coords[g] = grid.Coords(g);
  std::vector<int> levels(static_cast<size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    int mx = 0;
    for (const auto& c : coords) mx = std::max(mx, c[static_cast<size_t>(f)] + 1);
    levels[static_cast<size_t>(f)] = mx;
  }

  // key[S][g]: position of g's S-projection; mean[S][key]: v(S) for that key.
  std::vector<std::vector<size_t>> key(coalitions, std::vector<size_t>(grid.size()));
  std::vector<std::vector<double>> mean(coalitions);
  for (size_t s = 0; s < coalitions; ++s) {
    size_t cells = 1;
    for (int f = 0; f < nf; ++f) {
      if (s & (size_t{1} << f)) cells *= static_cast<size_t>(levels[static_cast<size_t>(f)]);
    }
    std::vector<double> sum(cells, 0.0);
    std::vector<size_t> count(cells, 0);
    for (size_t g = 0; g < grid.size(); ++g) {
      size_t k = 0;
      for (int f = 0; f < nf; ++f) {
        if (s & (size_t{1} << f)) {
          k = k * static_cast<size_t>(levels[static_cast<size_t>(f)]) +
              static_cast<size_t>(coords[g][static_cast<size_t>(f)]);
        }
      }
      key[s][g] = k;
      sum[k] += values[g];
      ++count[k];
    }
    mean[s].resize(cells);
    for (size_t k = 0; k < cells; ++k) mean[s][k] = sum[k] / static_cast<double>(count[k]);
  }

  std::vector<double> weight(static_cast<size_t>(nf));
  for (int s = 0; s < nf; ++s) weight[static_cast<size_t>(s)] = ShapleyWeight(s, nf);

  std::vector<std::vector<double>> phi(grid.size(), std::vector<double>(static_cast<size_t>(nf), 0.0));
  for (size_t g = 0; g < grid.size(); ++g) {
    for (int f = 0; f < nf; ++f) {
      const size_t bit = size_t{1} << f;
      double acc = 0.0;
      for (size_t s = 0; s < coalitions; ++s) {
        if (s & bit) continue;
        const double with = mean[s | bit][key[s | bit][g]];
        const double without = mean[s][key[s][g]];
        acc += weight[static_cast<size_t>(std::popcount(s))] * (with - without);
      }
      phi[g][static_cast<size_t>(f)] = acc;
    }
  }
  return phi;
}

std::vector<double> ExactShapley(const FactorGrid& grid, std::span<const double> values,
                                 size_t config) {
  if (config >= grid.size()) throw Error(ErrorKind::kCoverage, "config outside the grid");
  return ExactShapleyAll(grid, values)[config];
}

std::vector<std::array<double, kNumTunedParams>> ShapleyImportance(
    const SearchSpace& space, std::span<const double> mean_gaps) {
  space.Validate();
  const auto lv = space.levels();
  const FactorGrid grid(std::vector<int>(lv.begin(), lv.end()));
  const auto all = ExactShapleyAll(grid, mean_gaps);
  std::vector<std::array<double, kNumTunedParams>> out(all.size());
  for (size_t g = 0; g < all.size(); ++g) {
    std::copy(all[g].begin(), all[g].end(), out[g].begin());
  }
  return out;
}

TuningReport Tune(const SearchSpace& space, const ConfigEvaluator& evaluate,
                  const TuneOptions& options) {
  const auto configs = GridConfigs(space);
  std::vector<size_t> chosen(configs.size());
  std::iota(chosen.begin(), chosen.end(), size_t{0});
  if (options.subset && *options.subset < configs.size()) {
    std::vector<size_t> sample;
    std::mt19937_64 rng(options.seed);
    std::sample(chosen.begin(), chosen.end(), std::back_inserter(sample), *options.subset, rng);
    chosen = std::move(sample);
  }
  if (chosen.empty()) throw Error(ErrorKind::kSpace, "no configurations to evaluate");

  TuningReport report;
  report.results.resize(chosen.size());
  ParallelFor(chosen.size(), options.jobs, [&](size_t k) {
    auto& r = report.results[k];
    r.config_id = chosen[k];
    r.params = configs[chosen[k]];
    r.mean_gap = evaluate(r.params);
  });

  for (size_t k = 1; k < report.results.size(); ++k) {
    if (report.results[k].mean_gap < report.results[report.best].mean_gap) report.best = k;
    if (report.results[k].mean_gap > report.results[report.worst].mean_gap) report.worst = k;
  }
  if (const auto d = GridIndex(space, space.base)) {
    for (size_t k = 0; k < report.results.size(); ++k) {
      if (report.results[k].config_id == *d) report.default_pos = k;
    }
  }
  report.full_grid = chosen.size() == configs.size();
  if (report.full_grid) {
    std::vector<double> gaps(report.results.size());
    for (size_t k = 0; k < gaps.size(); ++k) gaps[k] = report.results[k].mean_gap;
    report.shapley = ShapleyImportance(space, gaps);
  }
  return report;
}

TuningReport Tune(std::span<const Instance> tuning_set,
                  std::span<const std::optional<std::vector<int>>> reference_tours,
                  const HeatmapSpec& heatmap, const SearchSpace& space, const Budget& budget,
                  const TuneOptions& options) {
  if (tuning_set.empty()) throw Error(ErrorKind::kEmptyInput, "tuning set is empty");
  // Solve the reference tours once instead of once per configuration.
  std::vector<std::optional<std::vector<int>>> refs(tuning_set.size());
  ParallelFor(tuning_set.size(), options.jobs, [&](size_t i) {
    if (!reference_tours.empty() && reference_tours[i]) {
      refs[i] = reference_tours[i];
    } else if (tuning_set[i].n() <= kExactSolveMaxN) {
      const DistanceMatrix dm(tuning_set[i], DefaultMetric(tuning_set[i]));
      refs[i] = ExactSolve(dm).order();
    } else {
      throw Error(ErrorKind::kMissingReference,
                  "instance '" + tuning_set[i].id() + "' has no reference tour");
    }
  });
  const ConfigEvaluator evaluate = [&](const MctsParams& params) {
    BenchmarkOptions bo;
    bo.seed = options.seed;
    bo.jobs = 1;
    return *RunBenchmark(tuning_set, refs, heatmap, params, budget, bo).mean_gap();
  };
  return Tune(space, evaluate, options);
}

std::string TuningCsv(const TuningReport& report) {
  std::ostringstream out;
  out << "config_id,alpha,beta,max_depth,mcn,param_h,use_heatmap,mean_gap\n";
  for (const auto& r : report.results) {
    const auto& p = r.params;
    out << r.config_id << "," << internal::FormatDouble(p.alpha) << ","
        << internal::FormatDouble(p.beta) << "," << p.max_depth << "," << p.max_candidate_num
        << "," << p.param_h << "," << (p.use_heatmap ? "true" : "false") << ","
        << internal::FormatDouble(r.mean_gap) << "\n";
  }
  return out.str();
}

std::string ShapleyCsv(const SearchSpace& space, const TuningReport& report) {
  std::ostringstream out;
  out << "config_id,param,value,phi\n";
  if (report.shapley.size() != report.results.size()) return out.str();
  const auto lv = space.levels();
  const FactorGrid grid(std::vector<int>(lv.begin(), lv.end()));
  for (size_t k = 0; k < report.results.size(); ++k) {
    const auto coords = grid.Coords(report.results[k].config_id);
    for (int f = 0; f < kNumTunedParams; ++f) {
      out << report.results[k].config_id << "," << kTunedParamNames[static_cast<size_t>(f)]
          << "," << space.ValueText(f, coords[static_cast<size_t>(f)]) << ","
          << internal::FormatDouble(report.shapley[k][static_cast<size_t>(f)]) << "\n";
    }
  }
  return out.str();
}

}  // namespace hmcts
