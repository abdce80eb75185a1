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

#include "basisrisk/loss_model.hpp"

#include <algorithm>
#include <cmath>

#include "basisrisk/analytic.hpp"
#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {

void LossModelParams::validate() const {
  if (!(v > 0.0 && p > 0.0 && q > 0.0)) {
    throw NumericDomainError("loss model needs v, p, q > 0");
  }
  if (!(rate > 0.0 && steepness >= 0.0)) throw NumericDomainError("invalid damage curve");
}

double LossModelParams::error_scale() const { return std::min((p + q) / p, (p + q) / q); }

double LossModelParams::error_shift() const { return std::min(1.0, p / q); }

double loss_mean(double theta, const LossModelParams& m) {
  if (theta <= m.offset) return 0.0;
  const double e = std::exp(-m.rate * (theta - m.offset));
  return m.v * (1.0 - e) / (1.0 + m.steepness * e);
}

double loss_sd_scale(double theta, const LossModelParams& m) {
  const double mu = loss_mean(theta, m);
  return mu * (1.0 - mu / m.v);
}

LossIndexSample simulate_losses(std::span<const double> winds, const LossModelParams& params,
                                std::uint64_t seed) {
  params.validate();
  const double c = params.error_scale();
  const double d = params.error_shift();
  LossIndexSample s;
  s.indices.assign(winds.begin(), winds.end());
  s.losses.resize(winds.size());
  for (std::size_t i = 0; i < winds.size(); ++i) {
    Rng rng(seed, stream_id(0, i));
    const double mu = loss_mean(winds[i], params);
    const double sigma = mu * (1.0 - mu / params.v);
    const double z = rng.beta(params.p, params.q);
    // Guard the bounds against rounding at the support edges.
    s.losses[i] = std::clamp(mu + sigma * (c * z - d), 0.0, params.v);
  }
  return s;
}

LocationScaleConditional loss_model_conditional(const LossModelParams& params) {
  params.validate();
  const double c = params.error_scale();
  const double d = params.error_shift();
  const double p = params.p, q = params.q;
  LocationScaleConditional::ErrorLaw law{
      [c, d, p, q](Level g) { return c * expectile_beta(p, q, g) - d; }, -d, c - d};
  return LocationScaleConditional([params](double t) { return loss_mean(t, params); },
                                  [params](double t) { return loss_sd_scale(t, params); },
                                  std::move(law));
}

std::vector<double> synthetic_winds(std::size_t n, std::uint64_t seed, const SyntheticWind& law) {
  if (!(law.shape > 0.0 && law.scale > 0.0)) throw NumericDomainError("invalid wind law");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(seed, stream_id(1, i));
    out[i] = law.offset + law.scale * rng.gamma(law.shape);
  }
  return out;
}

Portfolio simulate_portfolio(const TrackSet& tracks, std::span<const Site> sites,
                             std::span<const LossModelParams> params, std::uint64_t seed) {
  if (sites.size() < 2) throw NumericDomainError("portfolio needs at least 2 sites");
  if (params.size() != sites.size()) throw NumericDomainError("one loss model per site");
  tracks.validate();
  Portfolio pf;
  const std::size_t n = tracks.tracks.size();
  pf.winds.assign(sites.size(), std::vector<double>(n, 0.0));
  pf.losses.assign(sites.size(), std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < sites.size(); ++s) {
    sites[s].validate();
    params[s].validate();
    pf.site_names.push_back(sites[s].name);
    const double c = params[s].error_scale();
    const double d = params[s].error_shift();
    for (std::size_t i = 0; i < n; ++i) {
      const auto w = incident_wind(tracks.tracks[i], sites[s]);
      if (!w) continue;
      pf.winds[s][i] = *w;
      Rng rng(seed, stream_id(s + 2, i));
      const double mu = loss_mean(*w, params[s]);
      const double sigma = mu * (1.0 - mu / params[s].v);
      pf.losses[s][i] =
          std::clamp(mu + sigma * (c * rng.beta(params[s].p, params[s].q) - d), 0.0, params[s].v);
    }
  }
  return pf;
}

}  // namespace basisrisk
