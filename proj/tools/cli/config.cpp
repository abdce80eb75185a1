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

#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"
#include "basisrisk/scenarios.hpp"

namespace basisrisk::cli {
namespace fs = std::filesystem;

namespace {

const Json kEmpty = Json::object();

std::ifstream open_input(const RunConfig& config, const std::string& rel) {
  const fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : config.base_dir / rel;
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  return in;
}

void expect_object(const Json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
}

}  // namespace

const Json& RunConfig::section(const char* name) const {
  auto it = raw.find(name);
  if (it == raw.end()) return kEmpty;
  expect_object(*it, name);
  return *it;
}

double get_number(const Json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw ConfigError(std::string(key) + " must be a number");
  return it->get<double>();
}

std::size_t get_size(const Json& j, const char* key, std::size_t fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0) {
    throw ConfigError(std::string(key) + " must be a positive integer");
  }
  return it->get<std::size_t>();
}

std::string get_string(const Json& j, const char* key, const std::string& fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) throw ConfigError(std::string(key) + " must be a string");
  return it->get<std::string>();
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir,
                       std::optional<std::uint64_t> seed_override) {
  RunConfig c;
  try {
    c.raw = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  expect_object(c.raw, "config");
  if (seed_override) {
    c.raw["seed"] = *seed_override;
  }
  auto it = c.raw.find("seed");
  if (it == c.raw.end() || !it->is_number_unsigned()) {
    throw ConfigError("config needs a non-negative integer seed");
  }
  c.seed = it->get<std::uint64_t>();
  c.base_dir = base_dir;
  return c;
}

RunConfig load_config(const fs::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path(), seed_override);
}

ContractSpec contract_from(const Json& j) {
  ContractSpec s;
  try {
    auto fam = j.find("family");
    if (fam != j.end() && fam->is_string()) s.family = parse_payout_family(fam->get<std::string>());
    s.principle = parse_premium_principle(get_string(j, "principle", "expected_value"));
  } catch (const NumericDomainError& e) {
    throw ConfigError(e.what());
  }
  s.rho = get_number(j, "rho", s.rho);
  s.building_value = get_number(j, "building_value", s.building_value);
  s.attachment = get_number(j, "attachment", s.attachment);
  s.cap = get_number(j, "cap", s.cap);
  if (auto t = j.find("trigger"); t != j.end()) {
    expect_object(*t, "trigger");
    s.trigger.lo = get_number(*t, "lo", s.trigger.lo);
    s.trigger.hi = get_number(*t, "hi", std::numeric_limits<double>::infinity());
  }
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("contract: ") + e.what());
  }
  return s;
}

std::vector<PayoutFamily> families_from(const Json& contract) {
  auto fam = contract.find("family");
  if (fam == contract.end()) return {PayoutFamily::PurePar};
  std::vector<PayoutFamily> out;
  try {
    if (fam->is_string()) {
      out.push_back(parse_payout_family(fam->get<std::string>()));
    } else if (fam->is_array() && !fam->empty()) {
      for (const auto& f : *fam) {
        if (!f.is_string()) throw ConfigError("contract.family entries must be strings");
        out.push_back(parse_payout_family(f.get<std::string>()));
      }
    } else {
      throw ConfigError("contract.family must be a string or a non-empty array");
    }
  } catch (const NumericDomainError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

UtilityContext utility_from(const Json& j) {
  const std::string family = get_string(j, "family", "exponential");
  const double w0 = get_number(j, "w0", 100.0);
  try {
    if (family == "exponential") return {Utility::exponential(get_number(j, "beta", 0.15)), w0};
    if (family == "power") return {Utility::power(get_number(j, "eta", 2.0)), w0};
  } catch (const std::exception& e) {
    throw ConfigError(std::string("utility: ") + e.what());
  }
  throw ConfigError("utility.family must be exponential or power");
}

std::vector<double> gamma_grid_from(const Json& j) {
  std::vector<double> g;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("grid entries must be numbers");
      g.push_back(v.get<double>());
    }
  } else if (j.is_object() || j.is_null()) {
    const Json& o = j.is_null() ? kEmpty : j;
    const std::string kind = get_string(o, "kind", "linear");
    const std::size_t n = get_size(o, "points", 99);
    if (kind == "linear") {
      for (std::size_t i = 0; i < n; ++i) g.push_back(static_cast<double>(i + 1) / (n + 1));
    } else if (kind == "logit") {
      const double span = get_number(o, "logit_span", 9.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double z = n == 1 ? 0.0 : -span + 2.0 * span * i / (n - 1);
        g.push_back(1.0 / (1.0 + std::exp(-z)));
      }
    } else {
      throw ConfigError("grid.kind must be linear or logit");
    }
  } else {
    throw ConfigError("grid must be an object or an array");
  }
  if (g.empty()) throw ConfigError("grid is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0 && g[i] < 1.0)) throw ConfigError("grid levels must lie in (0, 1)");
    if (i > 0 && !(g[i] > g[i - 1])) throw ConfigError("grid levels must increase");
  }
  return g;
}

LossModelParams loss_params_from(const Json& j) {
  LossModelParams p;
  p.v = get_number(j, "v", p.v);
  p.p = get_number(j, "p", p.p);
  p.q = get_number(j, "q", p.q);
  p.rate = get_number(j, "rate", p.rate);
  p.offset = get_number(j, "offset", p.offset);
  p.steepness = get_number(j, "steepness", p.steepness);
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("loss: ") + e.what());
  }
  return p;
}

Site site_from(const Json& j) {
  expect_object(j, "site");
  Site s;
  s.name = get_string(j, "name", "site");
  s.lat_deg = get_number(j, "lat_deg", s.lat_deg);
  s.lon_deg = get_number(j, "lon_deg", s.lon_deg);
  s.radius_km = get_number(j, "radius_km", s.radius_km);
  s.trigger_threshold_kn = get_number(j, "threshold_kn", s.trigger_threshold_kn);
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("site: ") + e.what());
  }
  return s;
}

TrackSet load_tracks(const RunConfig& config) {
  const Json& t = config.section("tracks");
  const std::string source = get_string(t, "source", "synthetic");
  if (source == "csv") {
    auto in = open_input(config, get_string(t, "path", ""));
    return read_track_csv(in);
  }
  if (source == "storm") {
    auto in = open_input(config, get_string(t, "path", ""));
    WindConversion conv;
    conv.gust_factor = get_number(t, "gust_factor", conv.gust_factor);
    conv.kn_per_ms = get_number(t, "kn_per_ms", conv.kn_per_ms);
    return read_storm(in, conv);
  }
  if (source == "synthetic") {
    SyntheticTrackOptions o;
    o.n = get_size(t, "n", o.n);
    o.lat_lo = get_number(t, "lat_lo", o.lat_lo);
    o.lat_hi = get_number(t, "lat_hi", o.lat_hi);
    o.lon_lo = get_number(t, "lon_lo", o.lon_lo);
    o.lon_hi = get_number(t, "lon_hi", o.lon_hi);
    o.steps = static_cast<int>(get_size(t, "steps", static_cast<std::size_t>(o.steps)));
    o.step_km = get_number(t, "step_km", o.step_km);
    o.turn_sd_deg = get_number(t, "turn_sd_deg", o.turn_sd_deg);
    return synthetic_tracks(o, config.seed);
  }
  throw ConfigError("tracks.source must be csv, storm or synthetic");
}

namespace {

std::vector<double> load_winds(const RunConfig& config, const Json& w, std::size_t n) {
  const std::string source = get_string(w, "source", "synthetic");
  if (source == "synthetic") {
    SyntheticWind law;
    law.offset = get_number(w, "offset", law.offset);
    law.shape = get_number(w, "shape", law.shape);
    law.scale = get_number(w, "scale", law.scale);
    return synthetic_winds(n, config.seed, law);
  }
  if (source == "tracks") {
    const Site site = site_from(w.contains("site") ? w.at("site") : kEmpty);
    const auto incidents = incident_windspeeds(load_tracks(config), site);
    if (incidents.empty()) throw DegenerateDataError("no track passes the site");
    return bootstrap(incidents, n, config.seed);
  }
  throw ConfigError("winds.source must be synthetic or tracks");
}

}  // namespace

LoadedSample load_sample(const RunConfig& config) {
  const Json& s = config.section("sample");
  LoadedSample out;
  out.source = get_string(s, "source", "loss_model");
  if (out.source == "csv") {
    auto in = open_input(config, get_string(s, "path", ""));
    out.sample = read_sample_csv(in);
  } else if (out.source == "toy") {
    const auto holder = static_cast<int>(get_size(s, "holder", 1));
    if (holder > 3) throw ConfigError("sample.holder must be 1, 2 or 3");
    out.sample = toy_portfolio(holder).sample;
  } else if (out.source == "regime_change") {
    const auto holder = static_cast<int>(get_size(s, "holder", 1));
    if (holder > 2) throw ConfigError("sample.holder must be 1 or 2");
    auto rc = regime_change(holder, get_size(s, "n", 100000), config.seed);
    out.sample = std::move(rc.scenario.sample);
    out.analytic = std::make_shared<GammaConditional>(std::move(rc.conditional));
  } else if (out.source == "loss_model") {
    const std::size_t n = get_size(s, "n", 100000);
    const LossModelParams params = loss_params_from(s.contains("loss") ? s.at("loss") : kEmpty);
    const auto winds = load_winds(config, s.contains("winds") ? s.at("winds") : kEmpty, n);
    out.sample = simulate_losses(winds, params, config.seed);
    out.analytic = std::make_shared<LocationScaleConditional>(loss_model_conditional(params));
  } else {
    throw ConfigError("sample.source must be csv, toy, regime_change or loss_model");
  }
  try {
    out.sample.validate();
  } catch (const std::exception& e) {
    throw DegenerateDataError(std::string("sample: ") + e.what());
  }
  return out;
}

std::shared_ptr<const ConditionalModel> conditioner_for(const RunConfig& config,
                                                  const LoadedSample& loaded,
                                                  const ContractSpec& spec) {
  const Json& w = config.section("weighting");
  const std::string kind = get_string(w, "conditioner", loaded.analytic ? "analytic" : "binned");
  if (kind == "analytic") {
    if (!loaded.analytic) throw ConfigError("sample source has no analytic conditional law");
    return loaded.analytic;
  }
  const TriggerSplit split = split_by_trigger(loaded.sample, spec);
  if (kind == "binned") {
    return std::make_shared<BinnedEmpiricalConditional>(
        split.triggered.indices, split.triggered.losses, get_size(w, "min_bin_count", 200),
        get_size(w, "max_bins", 50));
  }
  if (kind == "pooled") {
    return std::make_shared<PooledConditional>(EmpiricalSample(split.triggered.losses));
  }
  throw ConfigError("weighting.conditioner must be analytic, binned or pooled");
}

}  // namespace basisrisk::cli
