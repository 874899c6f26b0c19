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

#ifndef HMCTS_TOOLS_CLI_HPP_
#define HMCTS_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace hmcts::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIoFailure = 3,
  kConfigFailure = 4,
};

// Runs one invocation; args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmcts::cli

#endif  // HMCTS_TOOLS_CLI_HPP_
