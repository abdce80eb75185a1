// Copyright 2026 The basisrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BASISRISK_TOOLS_APP_HPP_
#define BASISRISK_TOOLS_APP_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace basisrisk::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kIo = 3,
  kDomain = 4,
  kDegenerate = 5,
};

// Parses argv (without the program name) and runs one subcommand. Timings
// and diagnostics go to `err`; results go to files only.
int run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace basisrisk::cli

#endif  // BASISRISK_TOOLS_APP_HPP_
