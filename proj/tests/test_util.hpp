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

#ifndef HMCTS_TESTS_TEST_UTIL_HPP_
#define HMCTS_TESTS_TEST_UTIL_HPP_

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hmcts/error.hpp"
#include "hmcts/instance.hpp"

#define EXPECT_ERROR_KIND(stmt, expected_kind)                           \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "expected " << ::hmcts::ToString(expected_kind);  \
    } catch (const ::hmcts::Error& e) {                                  \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                    \
    }                                                                    \
  } while (0)

namespace hmcts::testing {

// Unit square corners, listed around the perimeter.
inline Instance Square() {
  return Instance("square", {{0, 0}, {0, 1}, {1, 1}, {1, 0}}, FileSource{});
}

// m points evenly spaced on a circle around (0.5, 0.5), in angular order.
inline Instance Circle(int m, double radius = 0.4) {
  std::vector<Point> pts;
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * 3.14159265358979323846 * k / m;
    pts.push_back({0.5 + radius * std::cos(t), 0.5 + radius * std::sin(t)});
  }
  return Instance("circle" + std::to_string(m), std::move(pts), FileSource{});
}

}  // namespace hmcts::testing

#endif  // HMCTS_TESTS_TEST_UTIL_HPP_
