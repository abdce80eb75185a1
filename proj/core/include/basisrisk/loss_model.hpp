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

#ifndef BASISRISK_LOSS_MODEL_HPP_
#define BASISRISK_LOSS_MODEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "basisrisk/conditional.hpp"
#include "basisrisk/contracts.hpp"
#include "basisrisk/tracks.hpp"

namespace basisrisk {

// S | theta = mu(theta) + sigma(theta) (c Z - d), Z ~ Beta(p, q), with an
// S-shaped damage curve mu and sigma = mu (1 - mu / v).
struct LossModelParams {
  double v = 100.0;
  double p = 3.0;
  double q = 3.0;
  double rate = 0.09;
  double offset = 64.0;
  double steepness = 150.0;

  void validate() const;
  // c = min((p + q) / p, (p + q) / q) and d = min(1, p / q) make the error
  // mean zero with support [-d, c - d].
  double error_scale() const;
  double error_shift() const;
};

double loss_mean(double theta, const LossModelParams& params);
double loss_sd_scale(double theta, const LossModelParams& params);

// Row i draws from stream (0, i), so results do not depend on batch order.
LossIndexSample simulate_losses(std::span<const double> winds, const LossModelParams& params,
                                std::uint64_t seed);

// Analytic conditional law of the model.
LocationScaleConditional loss_model_conditional(const LossModelParams& params);

// Wind stand-in used when no track data is supplied:
// theta = offset + Gamma(shape, scale).
struct SyntheticWind {
  double offset = 30.0;
  double shape = 4.0;
  double scale = 12.0;
};

std::vector<double> synthetic_winds(std::size_t n, std::uint64_t seed,
                                    const SyntheticWind& law = {});

// One row per track; site columns hold the incident wind (0 without an
// incident) and a loss with independent per-site errors.
struct Portfolio {
  std::vector<std::string> site_names;
  std::vector<std::vector<double>> winds;   // [site][track]
  std::vector<std::vector<double>> losses;  // [site][track]
};

Portfolio simulate_portfolio(const TrackSet& tracks, std::span<const Site> sites,
                             std::span<const LossModelParams> params, std::uint64_t seed);

}  // namespace basisrisk

#endif  // BASISRISK_LOSS_MODEL_HPP_
