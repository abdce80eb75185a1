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

#ifndef BASISRISK_CONTRACTS_HPP_
#define BASISRISK_CONTRACTS_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "basisrisk/conditional.hpp"
#include "basisrisk/expectile.hpp"
#include "basisrisk/utility.hpp"

namespace basisrisk {

// Half-open index interval [lo, hi); hi may be +inf.
struct TriggerInterval {
  double lo = 83.0;
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double theta) const noexcept { return theta >= lo && theta < hi; }
};

enum class PayoutFamily { PurePar, IndexPar, PiecewiseLinear };
enum class PremiumPrinciple { ExpectedValue, StdDev, Variance };

std::string to_string(PayoutFamily f);
std::string to_string(PremiumPrinciple p);
PayoutFamily parse_payout_family(const std::string& s);
PremiumPrinciple parse_premium_principle(const std::string& s);

struct ContractSpec {
  TriggerInterval trigger;
  PayoutFamily family = PayoutFamily::PurePar;
  PremiumPrinciple principle = PremiumPrinciple::ExpectedValue;
  double rho = 0.2;
  double building_value = 100.0;
  // Piecewise-linear scheme min(max(0, slope (theta - attachment)), cap).
  double attachment = 83.0;
  double cap = 100.0;

  void validate() const;
};

struct LossIndexSample {
  std::vector<double> losses;
  std::vector<double> indices;

  std::size_t size() const noexcept { return losses.size(); }
  void validate() const;
};

struct TriggerSplit {
  LossIndexSample triggered;
  LossIndexSample untriggered;
  std::vector<bool> mask;  // aligned with the source rows
  double p_trigger = 0.0;
};

// Throws DegenerateDataError("degenerate trigger") if either side is empty.
TriggerSplit split_by_trigger(const LossIndexSample& sample, const ContractSpec& spec);

struct PayoutVector {
  std::vector<double> payments;
};

PayoutVector pure_parametric_payout(const LossIndexSample& sample,
                                    const ContractSpec& spec, Level gamma);
PayoutVector index_payout(const LossIndexSample& sample, const ContractSpec& spec,
                          Level gamma, const ConditionalModel& conditioner);
PayoutVector piecewise_linear_payout(const LossIndexSample& sample,
                                     const ContractSpec& spec, double slope);

// Population moments throughout: E (1 + rho) m, SD m + rho s, V m + rho s^2.
double premium(const PayoutVector& payout, const ContractSpec& spec);
double premium(std::span<const double> payments, PremiumPrinciple principle, double rho);

// B = Y - S, positive for overcompensation.
std::vector<double> basis_risk(std::span<const double> losses, const PayoutVector& payout);

// Mean of alpha^2 (S - Y)+^2 + (1 - alpha)^2 (S - Y)-^2.
double asymmetric_objective(std::span<const double> losses, const PayoutVector& payout,
                            BasisRiskWeight alpha);

struct BasisRiskOptimal {
  Level gamma_star;
};
struct PureUtility {
  UtilityContext utility;
};
using FitMode = std::variant<BasisRiskOptimal, PureUtility>;

struct SlopeFit {
  double slope = 0.0;
  double objective = 0.0;  // minimised loss, or negated mean utility
  bool at_boundary = false;
  bool grid_fallback = false;
  std::vector<std::string> warnings;
};

// Golden-section search for the slope of the piecewise-linear scheme,
// seeded by a 64-point log-spaced scan; a multi-modal scan profile falls
// back to a dense grid.
SlopeFit fit_piecewise_linear(const LossIndexSample& sample, const ContractSpec& spec,
                              const FitMode& mode);

}  // namespace basisrisk

#endif  // BASISRISK_CONTRACTS_HPP_
