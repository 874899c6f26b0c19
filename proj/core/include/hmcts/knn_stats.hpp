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

#ifndef HMCTS_KNN_STATS_HPP_
#define HMCTS_KNN_STATS_HPP_

#include <span>
#include <string>
#include <vector>

#include "hmcts/instance.hpp"

namespace hmcts {

// Probability that a tour step goes to the k-th nearest neighbour.
// masses[k - 1] holds rank k; ranks above support() have mass zero.
struct EmpiricalDistribution {
  std::vector<double> masses;
  int sample_count = 0;

  int support() const { return static_cast<int>(masses.size()); }
  double mass(int k) const {
    return k >= 1 && k <= support() ? masses[static_cast<size_t>(k - 1)] : 0.0;
  }
};

// Counts the neighbour rank of every tour step in both directions and
// normalises by 2n. Throws kInvalidTour when `order` is not a permutation.
EmpiricalDistribution PerInstanceDistribution(const RankTable& ranks,
                                              std::span<const int> order);

// Rank-wise mean. Throws kEmptyInput on an empty list.
EmpiricalDistribution Aggregate(std::span<const EmpiricalDistribution> dists);

// Mass at ranks 1..k.
double CumulativeMass(std::span<const double> masses, int k);
inline double CumulativeMass(const EmpiricalDistribution& dist, int k) {
  return CumulativeMass(dist.masses, k);
}

// `rank,mass,cumulative` with a header row.
std::string DistributionCsv(const EmpiricalDistribution& dist);

}  // namespace hmcts

#endif  // HMCTS_KNN_STATS_HPP_
