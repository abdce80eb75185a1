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

#ifndef BASISRISK_SCENARIOS_HPP_
#define BASISRISK_SCENARIOS_HPP_

#include <cstdint>
#include <vector>

#include "basisrisk/conditional.hpp"
#include "basisrisk/contracts.hpp"
#include "basisrisk/loss_model.hpp"
#include "basisrisk/utility.hpp"

namespace basisrisk {

// Sample, contract and utility that belong together.
struct Scenario {
  LossIndexSample sample;
  ContractSpec spec;
  UtilityContext utility;
};

// Small equally weighted portfolios for holders 1..3 with exponential
// utility (beta = 0.1, w0 = 10) and a 0/1 index that triggers on 1:
//   1: losses {5, 10} triggered, {0, 4} not, rho = 0.1
//   2: as 1 with rho = 0.2
//   3: {5, 5, 5, 10, 10, 10} triggered, {0, 0, 1, 1} not, rho = 0.3
Scenario toy_portfolio(int holder);

// Index uniform on (2, 4), S | theta ~ Gamma(r(theta), scale theta) with
// r = 3 up to 3.5 and 3.5 above, trigger theta > 3, power utility and
// w0 = 65. Holder 1: eta = 2, rho = 0.05. Holder 2: eta = 1.5, rho = 0.1.
struct RegimeChangeScenario {
  Scenario scenario;
  GammaConditional conditional;
};

RegimeChangeScenario regime_change(int holder, std::size_t n, std::uint64_t seed);
GammaConditional regime_change_conditional();

// Loss model on synthetic winds with an index-based contract, trigger
// [83, inf) and exponential utility.
struct WindScenarioOptions {
  std::size_t n = 100000;
  LossModelParams loss;
  SyntheticWind wind;
  double rho = 0.2;
  double beta = 0.15;
  double w0 = 100.0;
  PremiumPrinciple principle = PremiumPrinciple::ExpectedValue;
  PayoutFamily family = PayoutFamily::IndexPar;
  std::uint64_t seed = 1;
};

Scenario wind_scenario(const WindScenarioOptions& options);

}  // namespace basisrisk

#endif  // BASISRISK_SCENARIOS_HPP_
