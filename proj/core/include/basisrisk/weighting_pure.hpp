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

#ifndef BASISRISK_WEIGHTING_PURE_HPP_
#define BASISRISK_WEIGHTING_PURE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "basisrisk/conditional.hpp"
#include "basisrisk/contracts.hpp"
#include "basisrisk/expectile.hpp"
#include "basisrisk/utility.hpp"

namespace basisrisk {

enum class Decision {
  InteriorOptimum,
  PreferNoInsurance,
  PreferSmallestAlpha,
  PreferIndemnity,
  PreferLargestAlpha,
  EndpointLow,
  EndpointHigh,
};

std::string to_string(Decision d);

struct TracePoint {
  double gamma;
  double v1;
  double v2;
};

// Boundary verdicts. Each side also reports the ratio form used in the
// literature (lhs against threshold) for the k that decided it.
struct BoundCheck {
  bool lower_holds = false;
  bool upper_holds = false;
  double lower_k = 0.0;
  double lower_lhs = 0.0;
  double upper_k = 0.0;  // witness, or the limit point when violated
  double upper_lhs = 0.0;
  double threshold = 0.0;
  bool upper_truncated = false;  // unbounded range checked on a finite part
};

struct WeightingSolution {
  std::optional<double> gamma_star;
  std::optional<double> alpha_star;
  bool lower_bound_holds = false;
  bool upper_bound_holds = false;
  Decision decision = Decision::InteriorOptimum;
  double k_star = 0.0;     // e_gamma* (pure) or H2(gamma*) (index)
  double residual = 0.0;   // |V1 - V2| at the optimum
  BoundCheck bounds;
  std::vector<TracePoint> trace;
  // Violated-bound diagnostics.
  std::optional<double> v0;
  std::optional<double> utility_no_insurance;
  std::optional<double> utility_limit;
  std::vector<std::string> notes;
};

struct SolveOptions {
  double residual_tol = 1e-10;  // relative to V1 + V2
  double bracket_tol = 1e-10;   // on the level scale
  std::vector<double> trace_grid;  // empty: 99 points 0.01 .. 0.99
  std::optional<std::pair<double, double>> restrict;  // [gamma_lo, gamma_hi]
  std::optional<double> indemnity_loading;  // defaults to the contract rho
  int scan_points = 50;
  bool check_monotone = true;
};

std::vector<double> default_trace_grid();

// Pure parametric problem on a loss/index sample.
class PureProblem {
 public:
  PureProblem(const LossIndexSample& sample, const ContractSpec& spec,
              UtilityContext utility);

  // V1, V2 for payout level e on the trigger set.
  std::pair<double, double> v_at(double e) const;
  // Ratio form of the boundary condition at k.
  double bound_lhs(double k) const;
  double threshold() const;

  // Premium for a constant payout e on the trigger set.
  double premium_for(double e) const;
  // Mean utility with constant payout e on T.
  double utility_at(double e) const;
  double utility_no_insurance() const;

  const EmpiricalSample& triggered() const { return triggered_; }
  const TriggerSplit& split() const { return split_; }
  const ContractSpec& spec() const { return spec_; }
  const UtilityContext& utility() const { return utility_; }
  double p_trigger() const { return split_.p_trigger; }
  std::size_t n() const { return n_; }

 private:
  TriggerSplit split_;
  ContractSpec spec_;
  UtilityContext utility_;
  EmpiricalSample triggered_;
  std::size_t n_;
  double c_ = 0.0;  // c for E / SD principles
};

std::pair<double, double> v1_v2(const PureProblem& problem, Level gamma);

BoundCheck check_bounds(const PureProblem& problem, const SolveOptions& options = {});

Decision violated_boundary_decision(const PureProblem& problem, const BoundCheck& bounds,
                                    double indemnity_loading, WeightingSolution* diag = nullptr);

WeightingSolution solve_gamma_star(const PureProblem& problem,
                                   const SolveOptions& options = {});

struct ClosedForm {
  double alpha_star;
  double gamma_star;
  double x_exp;
};

// Exponential utility with the expected value principle.
ClosedForm closed_form_exponential(const PureProblem& problem);

struct UtilityPoint {
  double gamma;
  double u1;  // triggered rows
  double u2;  // untriggered rows
  double u;
};

// Expected utilities of w0 - S + Y_gamma - pi_gamma split by trigger. The
// index scheme is used when the contract family is IndexPar, which requires
// a conditioner.
std::vector<UtilityPoint> utility_curve(const LossIndexSample& sample,
                                        const ContractSpec& spec,
                                        const UtilityContext& utility,
                                        const std::vector<double>& gamma_grid,
                                        const ConditionalModel* conditioner = nullptr);

}  // namespace basisrisk

#endif  // BASISRISK_WEIGHTING_PURE_HPP_
