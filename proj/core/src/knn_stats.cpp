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

#include "hmcts/knn_stats.hpp"

#include <algorithm>
#include <sstream>

#include "hmcts/error.hpp"
#include "hmcts/tour.hpp"
#include "text_util.hpp"

namespace hmcts {

EmpiricalDistribution PerInstanceDistribution(const RankTable& ranks,
                                              std::span<const int> order) {
  const int n = ranks.n();
  ValidatePermutation(order, n);
  std::vector<long long> counts(static_cast<size_t>(n - 1), 0);
  int support = 0;
  for (int s = 0; s < n; ++s) {
    const int a = order[static_cast<size_t>(s)];
    const int b = order[static_cast<size_t>((s + 1) % n)];
    for (const int k : {ranks.rank_of(a, b), ranks.rank_of(b, a)}) {
      ++counts[static_cast<size_t>(k - 1)];
      support = std::max(support, k);
    }
  }
  EmpiricalDistribution dist;
  dist.sample_count = 1;
  dist.masses.resize(static_cast<size_t>(support));
  for (int k = 0; k < support; ++k) {
    dist.masses[static_cast<size_t>(k)] =
        static_cast<double>(counts[static_cast<size_t>(k)]) / (2.0 * n);
  }
  return dist;
}

EmpiricalDistribution Aggregate(std::span<const EmpiricalDistribution> dists) {
  if (dists.empty()) throw Error(ErrorKind::kEmptyInput, "no distributions to aggregate");
  int support = 0;
  for (const auto& d : dists) support = std::max(support, d.support());
  EmpiricalDistribution out;
  out.masses.assign(static_cast<size_t>(support), 0.0);
  for (const auto& d : dists) {
    for (int k = 0; k < d.support(); ++k) {
      out.masses[static_cast<size_t>(k)] += d.masses[static_cast<size_t>(k)];
    }
  }
  for (auto& m : out.masses) m /= static_cast<double>(dists.size());
  out.sample_count = static_cast<int>(dists.size());
  return out;
}

double CumulativeMass(std::span<const double> masses, int k) {
  double total = 0.0;
  const auto upto = std::min<size_t>(masses.size(), static_cast<size_t>(std::max(k, 0)));
  for (size_t i = 0; i < upto; ++i) total += masses[i];
  return total;
}

std::string DistributionCsv(const EmpiricalDistribution& dist) {
  std::ostringstream out;
  out << "rank,mass,cumulative\n";
  double cum = 0.0;
  for (int k = 1; k <= dist.support(); ++k) {
    cum += dist.mass(k);
    out << k << "," << internal::FormatDouble(dist.mass(k)) << ","
        << internal::FormatDouble(cum) << "\n";
  }
  return out.str();
}

}  // namespace hmcts
