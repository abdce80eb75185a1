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

#ifndef BASISRISK_TOOLS_COMMANDS_HPP_
#define BASISRISK_TOOLS_COMMANDS_HPP_

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace basisrisk::cli {

// Each command computes everything in memory and returns the files to
// write; nothing touches the output directory until the command succeeds.
OutputBundle cmd_fit_weighting(const RunConfig& config);
OutputBundle cmd_simulate(const RunConfig& config);
OutputBundle cmd_dependence_report(const RunConfig& config);
OutputBundle cmd_utility_curve(const RunConfig& config);

}  // namespace basisrisk::cli

#endif  // BASISRISK_TOOLS_COMMANDS_HPP_
