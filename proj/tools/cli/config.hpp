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

#ifndef BASISRISK_TOOLS_CONFIG_HPP_
#define BASISRISK_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "basisrisk/conditional.hpp"
#include "basisrisk/contracts.hpp"
#include "basisrisk/loss_model.hpp"
#include "basisrisk/tracks.hpp"
#include "basisrisk/utility.hpp"

namespace basisrisk::cli {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Json raw;  // with the effective seed written back
  std::uint64_t seed = 0;
  std::filesystem::path base_dir;  // relative input paths resolve here

  const Json& section(const char* name) const;
};

RunConfig load_config(const std::filesystem::path& path,
                      std::optional<std::uint64_t> seed_override);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       std::optional<std::uint64_t> seed_override);

double get_number(const Json& j, const char* key, double fallback);
std::size_t get_size(const Json& j, const char* key, std::size_t fallback);
std::string get_string(const Json& j, const char* key, const std::string& fallback);

ContractSpec contract_from(const Json& j);
std::vector<PayoutFamily> families_from(const Json& contract);
UtilityContext utility_from(const Json& j);
// {"kind": "linear" | "logit", "points": n, "logit_span": s} or an explicit
// array of levels.
std::vector<double> gamma_grid_from(const Json& j);
LossModelParams loss_params_from(const Json& j);
Site site_from(const Json& j);

struct LoadedSample {
  LossIndexSample sample;
  std::shared_ptr<const ConditionalModel> analytic;  // when the source has one
  std::string source;
};

LoadedSample load_sample(const RunConfig& config);

// Conditioner for index payouts: "analytic" (default when available),
// "binned" or "pooled".
std::shared_ptr<const ConditionalModel> conditioner_for(const RunConfig& config,
                                                  const LoadedSample& loaded,
                                                  const ContractSpec& spec);

TrackSet load_tracks(const RunConfig& config);

}  // namespace basisrisk::cli

#endif  // BASISRISK_TOOLS_CONFIG_HPP_
