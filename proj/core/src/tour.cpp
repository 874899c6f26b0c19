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

#include "hmcts/tour.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

#include "hmcts/error.hpp"
#include "text_util.hpp"

namespace hmcts {

void ValidatePermutation(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorKind::kInvalidTour, "tour has " + std::to_string(order.size()) +
                                             " cities, expected " + std::to_string(n));
  }
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (const int c : order) {
    if (c < 0 || c >= n) {
      throw Error(ErrorKind::kInvalidTour, "city index " + std::to_string(c) +
                                               " out of range");
    }
    if (seen[static_cast<size_t>(c)]) {
      throw Error(ErrorKind::kInvalidTour, "city " + std::to_string(c) +
                                               " visited twice");
    }
    seen[static_cast<size_t>(c)] = true;
  }
}

double TourLength(std::span<const int> order, const DistanceMatrix& dm) {
  ValidatePermutation(order, dm.n());
  double total = 0.0;
  for (size_t i = 0; i + 1 < order.size(); ++i) total += dm(order[i], order[i + 1]);
  total += dm(order.back(), order.front());
  return total;
}

std::vector<int> CanonicalOrder(std::span<const int> order) {
  std::vector<int> out(order.begin(), order.end());
  if (out.empty()) return out;
  const auto zero = std::find(out.begin(), out.end(), 0);
  if (zero != out.end()) std::rotate(out.begin(), zero, out.end());
  if (out.size() > 2 && out.back() < out[1]) std::reverse(out.begin() + 1, out.end());
  return out;
}

Tour ExactSolve(const DistanceMatrix& dm) {
  const int n = dm.n();
  if (n > kExactSolveMaxN) {
    throw Error(ErrorKind::kSizeLimit, "exact solve supports n <= " +
                                           std::to_string(kExactSolveMaxN) +
                                           ", got " + std::to_string(n));
  }
  if (n <= 3) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    return Tour(CanonicalOrder(order), dm);
  }

  // City 0 is the fixed start; bit b of a mask stands for city b + 1.
  const int m = n - 1;
  const std::uint32_t full = (1u << m) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<size_t>(full + 1) * m, kInf);
  std::vector<std::int8_t> parent(static_cast<size_t>(full + 1) * m, -1);
  auto at = [m](std::uint32_t mask, int last) {
    return static_cast<size_t>(mask) * m + static_cast<size_t>(last);
  };

  for (int j = 0; j < m; ++j) cost[at(1u << j, j)] = dm(0, j + 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int last = 0; last < m; ++last) {
      if (!(mask & (1u << last))) continue;
      const double base = cost[at(mask, last)];
      if (base == kInf) continue;
      for (int next = 0; next < m; ++next) {
        if (mask & (1u << next)) continue;
        const std::uint32_t nmask = mask | (1u << next);
        const double c = base + dm(last + 1, next + 1);
        if (c < cost[at(nmask, next)]) {
          cost[at(nmask, next)] = c;
          parent[at(nmask, next)] = static_cast<std::int8_t>(last);
        }
      }
    }
  }

  int best_last = 0;
  double best = kInf;
  for (int last = 0; last < m; ++last) {
    const double c = cost[at(full, last)] + dm(last + 1, 0);
    if (c < best) {
      best = c;
      best_last = last;
    }
  }

  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  std::uint32_t mask = full;
  int cur = best_last;
  while (cur >= 0) {
    order.push_back(cur + 1);
    const int prev = parent[at(mask, cur)];
    mask &= ~(1u << cur);
    cur = prev;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return Tour(CanonicalOrder(order), dm);
}

Tour TwoOpt(const Tour& start, const DistanceMatrix& dm, int max_passes) {
  std::vector<int> order = start.order();
  ValidatePermutation(order, dm.n());
  const int n = static_cast<int>(order.size());
  constexpr double kEps = 1e-12;
  for (int pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        const int a = order[static_cast<size_t>(i)];
        const int b = order[static_cast<size_t>(i + 1)];
        const int c = order[static_cast<size_t>(j)];
        const int d = order[static_cast<size_t>((j + 1) % n)];
        const double delta = dm(a, c) + dm(b, d) - dm(a, b) - dm(c, d);
        if (delta < -kEps) {
          std::reverse(order.begin() + i + 1, order.begin() + j + 1);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  Tour result(std::move(order), dm);
  // Guards against a float-noise reversal that only broke ties.
  if (result.length() > start.length()) return start;
  return result;
}

std::vector<int> ParseTour(std::string_view text) {
  using internal::ParseInt;
  const auto section = text.find("TOUR_SECTION");
  std::vector<int> order;
  if (section != std::string_view::npos) {
    for (const auto tok : internal::Tokens(text.substr(section + 12))) {
      if (tok == "EOF") break;
      const auto v = ParseInt(tok);
      if (!v) throw Error(ErrorKind::kInvalidTour, "bad index '" + std::string(tok) + "'");
      if (*v == -1) break;
      order.push_back(static_cast<int>(*v - 1));
    }
    ValidatePermutation(order, static_cast<int>(order.size()));
    return order;
  }
  const auto toks = internal::Tokens(text);
  if (toks.empty()) throw Error(ErrorKind::kInvalidTour, "empty tour file");
  const auto n = ParseInt(toks[0]);
  if (!n || *n < 0) throw Error(ErrorKind::kInvalidTour, "bad tour size");
  if (toks.size() != static_cast<size_t>(*n) + 1) {
    throw Error(ErrorKind::kInvalidTour, "expected " + std::to_string(*n) + " indices");
  }
  for (size_t i = 1; i < toks.size(); ++i) {
    const auto v = ParseInt(toks[i]);
    if (!v) throw Error(ErrorKind::kInvalidTour, "bad index '" + std::string(toks[i]) + "'");
    order.push_back(static_cast<int>(*v));
  }
  ValidatePermutation(order, static_cast<int>(*n));
  return order;
}

std::string WriteTour(std::span<const int> order) {
  std::ostringstream out;
  out << order.size() << "\n";
  for (size_t i = 0; i < order.size(); ++i) {
    out << order[i] << ((i + 1) % 20 == 0 || i + 1 == order.size() ? "\n" : " ");
  }
  return out.str();
}

std::vector<int> ReadTourFile(const std::string& path) {
  return ParseTour(internal::ReadFile(path));
}

void WriteTourFile(std::span<const int> order, const std::string& path) {
  internal::WriteFile(path, WriteTour(order));
}

}  // namespace hmcts
