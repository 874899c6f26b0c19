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

#ifndef HMCTS_EVAL_HPP_
#define HMCTS_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hmcts/heatmap.hpp"
#include "hmcts/instance.hpp"
#include "hmcts/mcts.hpp"

namespace hmcts {

// (len / ref - 1) * 100. Throws kReference when ref <= 0.
double OptimalityGap(double length, double reference);

// Percentage points gained by tuning.
inline double Improvement(double default_gap, double tuned_gap) {
  return default_gap - tuned_gap;
}

// Where a run gets its heatmap from. Text form:
//   zero | softdist:<tau>[:<k_keep>] | gtprior:<builtin-name-or-file> | file:<path>
// A `file:` path naming a directory is searched for `<instance id>.heatmap`.
struct HeatmapSpec {
  struct Zero {};
  struct SoftDist {
    double tau = 1.0;
    int k_keep = 20;
  };
  struct GtPrior {
    PriorVector prior;
    std::string label;
  };
  struct File {
    std::string path;
  };

  std::variant<Zero, SoftDist, GtPrior, File> source;
  std::string text;

  // Throws kParameter on an unknown form; kIo/kFormat if a prior file cannot
  // be read.
  static HeatmapSpec Parse(std::string_view text);
  // Short method label used in result tables.
  std::string label() const;
};

Heatmap BuildHeatmap(const HeatmapSpec& spec, const Instance& inst, const DistanceMatrix& dm,
                     const RankTable& ranks);

// TSPLIB instances use rounded distances, everything else real ones.
Metric DefaultMetric(const Instance& inst);

struct GapReport {
  std::string instance_id;
  std::string config_id;
  std::string heatmap;
  double solver_length = 0.0;
  double reference_length = 0.0;
  double gap_percent = 0.0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> best_order;  // not part of the CSV
};

struct ResultTable {
  std::vector<GapReport> rows;

  // nullopt on an empty table.
  std::optional<double> mean_gap() const;
  std::optional<double> min_gap() const;
  std::optional<double> max_gap() const;

  // Row-wise equality ignoring wall time.
  bool SameResults(const ResultTable& other) const;
};

struct BenchmarkOptions {
  std::uint64_t seed = 0;  // instance i runs with seed + i
  int jobs = 1;
  std::string config_id = "default";
  std::optional<Metric> metric;  // per-instance default when unset
};

// One GapReport per instance, in instance order. Instances without a
// reference tour are solved exactly when small enough, otherwise
// kMissingReference is thrown.
ResultTable RunBenchmark(std::span<const Instance> instances,
                         std::span<const std::optional<std::vector<int>>> reference_tours,
                         const HeatmapSpec& heatmap, const MctsParams& params,
                         const Budget& budget, const BenchmarkOptions& options = {});

// Header `instance,config,heatmap,length,ref_length,gap_pct,time_s,seed`.
std::string ResultsCsv(const ResultTable& table);
ResultTable ParseResultsCsv(std::string_view text);

// Markdown summary with one row per (heatmap, config): instance count, mean
// length, mean reference length, mean gap and mean time.
std::string MarkdownReport(const ResultTable& table);

}  // namespace hmcts

#endif  // HMCTS_EVAL_HPP_
