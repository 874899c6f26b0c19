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

#ifndef HMCTS_TUNER_HPP_
#define HMCTS_TUNER_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmcts/eval.hpp"
#include "hmcts/mcts.hpp"

namespace hmcts {

inline constexpr int kNumTunedParams = 6;

// Column names shared by the tuning and Shapley CSVs, in grid order.
inline constexpr std::array<std::string_view, kNumTunedParams> kTunedParamNames = {
    "alpha", "beta", "max_depth", "mcn", "param_h", "use_heatmap"};

// Finite admissible values per tuned hyperparameter. Fields not tuned here
// (the time factor) come from `base`.
struct SearchSpace {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<int> max_depth;
  std::vector<int> max_candidate_num;
  std::vector<int> param_h;
  std::vector<bool> use_heatmap;
  MctsParams base;

  // 3 x 3 x 4 x 4 x 3 x 2 = 864 configurations; base holds the defaults.
  static SearchSpace Builtin();

  std::array<int, kNumTunedParams> levels() const;
  size_t size() const;
  // Throws kSpace when any value list is empty.
  void Validate() const;
  // Value of feature f at level l, as text.
  std::string ValueText(int feature, int level) const;
};

// Full Cartesian product, lexicographic in field order (last field fastest).
std::vector<MctsParams> GridConfigs(const SearchSpace& space);

// Index of `params` in GridConfigs(space), or nullopt if it is not a grid
// point (time factor is ignored).
std::optional<size_t> GridIndex(const SearchSpace& space, const MctsParams& params);

// Full factorial grid with values stored row-major, last feature fastest.
class FactorGrid {
 public:
  explicit FactorGrid(std::vector<int> levels);

  int features() const { return static_cast<int>(levels_.size()); }
  size_t size() const { return size_; }
  std::vector<int> Coords(size_t index) const;
  size_t Index(std::span<const int> coords) const;

 private:
  std::vector<int> levels_;
  size_t size_ = 1;
};

// Exact interventional Shapley values of every feature for grid point
// `config`, where a coalition S is worth the mean of `values` over grid
// points agreeing with `config` on S. Throws kCoverage unless `values`
// covers the grid.
std::vector<double> ExactShapley(const FactorGrid& grid, std::span<const double> values,
                                 size_t config);
// Same for every grid point at once; row c holds the attribution of config c.
std::vector<std::vector<double>> ExactShapleyAll(const FactorGrid& grid,
                                                 std::span<const double> values);

struct ConfigResult {
  size_t config_id = 0;  // grid index
  MctsParams params;
  double mean_gap = 0.0;
};

struct TuningReport {
  std::vector<ConfigResult> results;  // grid order
  size_t best = 0;                    // positions into `results`
  size_t worst = 0;
  std::optional<size_t> default_pos;
  bool full_grid = false;
  // Per result row, one attribution per tuned parameter; empty unless the
  // full grid was evaluated.
  std::vector<std::array<double, kNumTunedParams>> shapley;

  const ConfigResult& best_config() const { return results[best]; }
};

// Maps a configuration to its mean optimality gap on the tuning set.
using ConfigEvaluator = std::function<double(const MctsParams&)>;

struct TuneOptions {
  std::optional<size_t> subset;  // evaluate a random sample of this many configs
  std::uint64_t seed = 0;
  int jobs = 1;  // configurations evaluated concurrently
};

// Evaluates configurations, picks the argmin (ties go to the earlier grid
// config) and, on a full grid, attaches Shapley attributions of mean gap.
TuningReport Tune(const SearchSpace& space, const ConfigEvaluator& evaluate,
                  const TuneOptions& options = {});

// Mean gap of each configuration measured with RunBenchmark on the tuning set.
TuningReport Tune(std::span<const Instance> tuning_set,
                  std::span<const std::optional<std::vector<int>>> reference_tours,
                  const HeatmapSpec& heatmap, const SearchSpace& space, const Budget& budget,
                  const TuneOptions& options = {});

// Per-config attributions over the full grid of `space`. `mean_gaps` is in
// grid order. Throws kCoverage if its size does not match the grid.
std::vector<std::array<double, kNumTunedParams>> ShapleyImportance(
    const SearchSpace& space, std::span<const double> mean_gaps);

// `config_id,alpha,beta,max_depth,mcn,param_h,use_heatmap,mean_gap`
std::string TuningCsv(const TuningReport& report);
// `config_id,param,value,phi`
std::string ShapleyCsv(const SearchSpace& space, const TuningReport& report);

}  // namespace hmcts

#endif  // HMCTS_TUNER_HPP_
