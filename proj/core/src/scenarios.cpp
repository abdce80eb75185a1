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

#include "basisrisk/scenarios.hpp"

#include <limits>

#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {
namespace {

LossIndexSample two_group(const std::vector<double>& triggered,
                          const std::vector<double>& untriggered) {
  LossIndexSample s;
  for (double x : triggered) {
    s.losses.push_back(x);
    s.indices.push_back(1.0);
  }
  for (double x : untriggered) {
    s.losses.push_back(x);
    s.indices.push_back(0.0);
  }
  return s;
}

double regime_shape(double theta) { return theta <= 3.5 ? 3.0 : 3.5; }

}  // namespace

Scenario toy_portfolio(int holder) {
  Scenario sc{{}, {}, {Utility::exponential(0.1), 10.0}};
  sc.spec.trigger = {0.5, std::numeric_limits<double>::infinity()};
  sc.spec.family = PayoutFamily::PurePar;
  sc.spec.principle = PremiumPrinciple::ExpectedValue;
  switch (holder) {
    case 1:
      sc.sample = two_group({5, 10}, {0, 4});
      sc.spec.rho = 0.1;
      break;
    case 2:
      sc.sample = two_group({5, 10}, {0, 4});
      sc.spec.rho = 0.2;
      break;
    case 3:
      sc.sample = two_group({5, 5, 5, 10, 10, 10}, {0, 0, 1, 1});
      sc.spec.rho = 0.3;
      break;
    default:
      throw NumericDomainError("holder must be 1, 2 or 3");
  }
  return sc;
}

GammaConditional regime_change_conditional() {
  return GammaConditional(regime_shape, [](double theta) { return theta; });
}

RegimeChangeScenario regime_change(int holder, std::size_t n, std::uint64_t seed) {
  if (holder != 1 && holder != 2) throw NumericDomainError("holder must be 1 or 2");
  const double eta = holder == 1 ? 2.0 : 1.5;
  const double rho = holder == 1 ? 0.05 : 0.1;
  Scenario sc{{}, {}, {Utility::power(eta), 65.0}};
  sc.spec.trigger = {3.0, std::numeric_limits<double>::infinity()};
  sc.spec.family = PayoutFamily::IndexPar;
  sc.spec.principle = PremiumPrinciple::ExpectedValue;
  sc.spec.rho = rho;
  sc.sample.losses.resize(n);
  sc.sample.indices.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(seed, stream_id(3, i));
    const double theta = 2.0 + 2.0 * rng.uniform();
    sc.sample.indices[i] = theta;
    sc.sample.losses[i] = theta * rng.gamma(regime_shape(theta));
  }
  return {std::move(sc), regime_change_conditional()};
}

Scenario wind_scenario(const WindScenarioOptions& o) {
  const auto winds = synthetic_winds(o.n, o.seed, o.wind);
  Scenario sc{simulate_losses(winds, o.loss, o.seed), {}, {Utility::exponential(o.beta), o.w0}};
  sc.spec.trigger = {83.0, std::numeric_limits<double>::infinity()};
  sc.spec.family = o.family;
  sc.spec.principle = o.principle;
  sc.spec.rho = o.rho;
  sc.spec.building_value = o.loss.v;
  return sc;
}

}  // namespace basisrisk
