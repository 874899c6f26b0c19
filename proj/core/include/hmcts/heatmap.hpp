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

#ifndef HMCTS_HEATMAP_HPP_
#define HMCTS_HEATMAP_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmcts/instance.hpp"
#include "hmcts/tour.hpp"

namespace hmcts {

struct HeatEntry {
  int neighbor = 0;
  double p = 0.0;
  friend bool operator==(const HeatEntry&, const HeatEntry&) = default;
};

// Sparse edge-probability matrix. Absent entries are implicit zeros. Each row
// is kept sorted by descending probability, ties by ascending neighbour.
class Heatmap {
 public:
  explicit Heatmap(int n) : rows_(static_cast<size_t>(n)) {}

  // Validates every entry (no self edges, no duplicates, p in [0,1], index in
  // range) and sorts each row. Throws kFormat.
  Heatmap(int n, std::vector<std::vector<HeatEntry>> rows);

  int n() const { return static_cast<int>(rows_.size()); }
  std::span<const HeatEntry> row(int i) const { return rows_[static_cast<size_t>(i)]; }
  double value(int i, int j) const;
  size_t entry_count() const;

  // Row-major n*n copy. Throws kSizeLimit above kDenseMaxN.
  std::vector<double> Dense() const;
  static constexpr int kDenseMaxN = 2000;

  friend bool operator==(const Heatmap&, const Heatmap&) = default;

 private:
  std::vector<std::vector<HeatEntry>> rows_;
};

// Mass per neighbour rank; masses[k - 1] is rank k, ranks past K() are zero.
struct PriorVector {
  std::vector<double> masses;
  int K() const { return static_cast<int>(masses.size()); }
};

// Throws kParameter if a mass lies outside [0,1] or the total exceeds 1.
void ValidatePrior(const PriorVector& prior);

// Instance-mean of the per-tour neighbour-rank distributions, truncated at
// the largest observed rank. Throws kAlignment on length mismatch.
PriorVector BuildGtPrior(std::span<const RankTable> rank_tables,
                         std::span<const std::vector<int>> tours);

// P_ij = prior[rank_of(i, j)] for ranks up to K.
Heatmap PriorToHeatmap(const PriorVector& prior, const RankTable& ranks);

Heatmap ZeroHeatmap(int n);

// Row softmax of -d_ij / tau over j != i, then truncated to the k_keep
// largest entries without renormalising.
Heatmap SoftDistHeatmap(const DistanceMatrix& dm, double tau, int k_keep);

// Keeps the k largest entries per row; ties go to the smaller neighbour.
Heatmap SparsifyTopK(const Heatmap& hm, int k);

// Text format: `n m` header, then m lines `i j p`.
Heatmap ParseHeatmap(std::string_view text);
std::string WriteHeatmap(const Heatmap& hm);
Heatmap LoadHeatmap(const std::string& path);
void SaveHeatmap(const Heatmap& hm, const std::string& path);

// Built-in priors measured on optimal tours of uniform instances with
// 500, 1000 and 10000 cities.
const PriorVector& BuiltinPrior(std::string_view name);  // tsp500|tsp1000|tsp10000
std::vector<std::string_view> BuiltinPriorNames();

// Masses separated by whitespace or commas; '[' ']' and '#' comments ignored.
PriorVector ParsePrior(std::string_view text);
std::string WritePrior(const PriorVector& prior);

}  // namespace hmcts

#endif  // HMCTS_HEATMAP_HPP_
