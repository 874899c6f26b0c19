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

#ifndef HMCTS_TOUR_HPP_
#define HMCTS_TOUR_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmcts/instance.hpp"

namespace hmcts {

// Closed tour length of `order`. Throws kInvalidTour unless `order` is a
// permutation of 0..dm.n()-1.
double TourLength(std::span<const int> order, const DistanceMatrix& dm);

// Throws kInvalidTour unless `order` is a permutation of 0..n-1.
void ValidatePermutation(std::span<const int> order, int n);

// A permutation of the cities with its cached length.
class Tour {
 public:
  Tour() = default;
  Tour(std::vector<int> order, const DistanceMatrix& dm)
      : order_(std::move(order)), length_(TourLength(order_, dm)) {}

  // Trusts the caller's length; used on hot paths where it is maintained
  // incrementally.
  static Tour FromTrusted(std::vector<int> order, double length) {
    Tour t;
    t.order_ = std::move(order);
    t.length_ = length;
    return t;
  }

  const std::vector<int>& order() const { return order_; }
  double length() const { return length_; }
  int n() const { return static_cast<int>(order_.size()); }

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  std::vector<int> order_;
  double length_ = 0.0;
};

// Rotates city 0 to the front, then picks the direction whose second city is
// smaller. Two tours describe the same cycle iff their canonical forms match.
std::vector<int> CanonicalOrder(std::span<const int> order);

inline constexpr int kExactSolveMaxN = 18;

// Held-Karp dynamic program. Throws kSizeLimit for n > kExactSolveMaxN.
Tour ExactSolve(const DistanceMatrix& dm);

// First-improvement 2-opt. Stops at a local optimum or after `max_passes`
// full sweeps.
Tour TwoOpt(const Tour& start, const DistanceMatrix& dm, int max_passes);

// Tour files: `n` then n 0-based indices, or a TSPLIB TOUR_SECTION with
// 1-based indices terminated by -1.
std::vector<int> ParseTour(std::string_view text);
std::string WriteTour(std::span<const int> order);

std::vector<int> ReadTourFile(const std::string& path);
void WriteTourFile(std::span<const int> order, const std::string& path);

}  // namespace hmcts

#endif  // HMCTS_TOUR_HPP_
