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

#include "cli/app.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "basisrisk/errors.hpp"
#include "cli/commands.hpp"

namespace basisrisk::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

using Command = std::function<OutputBundle(const RunConfig&)>;

int execute(const std::string& name, const Command& command, const std::string& config_path,
            const std::string& out_dir, std::optional<std::uint64_t> seed, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const RunConfig config = load_config(config_path, seed);
    OutputBundle bundle = command(config);
    Json manifest = {{"command", name},
                     {"config", config.raw},
                     {"seed", config.seed},
                     {"tool", "basisrisk"},
                     {"version", kVersion}};
    auto outputs = bundle.names();
    outputs.push_back("manifest.json");
    std::sort(outputs.begin(), outputs.end());
    manifest["outputs"] = outputs;
    bundle.add_json("manifest.json", manifest);
    bundle.write(out_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const DegenerateDataError& e) {
    err << "degenerate data: " << e.what() << '\n';
    return kDegenerate;
  } catch (const NumericDomainError& e) {
    err << "numeric domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const MonotonicityError& e) {
    err << "numeric domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const SeparabilityError& e) {
    err << "numeric domain error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  err << name << " finished in " << std::fixed << std::setprecision(3) << secs << " s\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"Basis-risk optimal expectile payment schemes for parametric insurance",
               "basisrisk"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
  };
  const std::vector<std::pair<std::string, std::string>> specs = {
      {"fit-weighting", "Solve for the optimal basis risk weighting"},
      {"simulate", "Simulate a loss/index sample and its summaries"},
      {"dependence-report", "Pairwise dependence and tail analytics across sites"},
      {"utility-curve", "Expected utility over a grid of expectile levels"},
  };
  const std::vector<Command> commands = {cmd_fit_weighting, cmd_simulate, cmd_dependence_report,
                                         cmd_utility_curve};
  std::vector<Options> opts(specs.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CLI::App* sub = app.add_subcommand(specs[i].first, specs[i].second);
    sub->add_option("--config", opts[i].config, "JSON run configuration")->required();
    sub->add_option("--out", opts[i].out, "Output directory")->capture_default_str();
    sub->add_option("--seed", opts[i].seed, "Override the configured seed");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    err << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfig;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) {
      return execute(specs[i].first, commands[i], opts[i].config, opts[i].out, opts[i].seed, err);
    }
  }
  return kUsage;
}

}  // namespace basisrisk::cli
