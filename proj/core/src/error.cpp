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

#include "hmcts/error.hpp"

#include <fstream>
#include <sstream>

#include "text_util.hpp"

namespace hmcts {

std::string_view ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSize: return "invalid size";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kUnsupportedMetric: return "unsupported metric";
    case ErrorKind::kInvalidTour: return "invalid tour";
    case ErrorKind::kSizeLimit: return "size limit";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kAlignment: return "alignment error";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kDimension: return "dimension mismatch";
    case ErrorKind::kDegenerateRow: return "degenerate row";
    case ErrorKind::kReference: return "reference error";
    case ErrorKind::kMissingReference: return "missing reference";
    case ErrorKind::kSpace: return "search space error";
    case ErrorKind::kCoverage: return "coverage error";
    case ErrorKind::kIo: return "I/O error";
  }
  return "error";
}

namespace internal {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace internal
}  // namespace hmcts
