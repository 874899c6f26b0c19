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

#ifndef HMCTS_ERROR_HPP_
#define HMCTS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmcts {

enum class ErrorKind {
  kInvalidSize,
  kParameter,
  kParse,
  kUnsupportedMetric,
  kInvalidTour,
  kSizeLimit,
  kFormat,
  kAlignment,
  kEmptyInput,
  kDimension,
  kDegenerateRow,
  kReference,
  kMissingReference,
  kSpace,
  kCoverage,
  kIo,
};

std::string_view ToString(ErrorKind kind);

// All library failures are reported through this exception; `kind()` lets
// callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ToString(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hmcts

#endif  // HMCTS_ERROR_HPP_
