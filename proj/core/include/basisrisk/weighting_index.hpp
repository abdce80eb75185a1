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

#ifndef BASISRISK_WEIGHTING_INDEX_HPP_
#define BASISRISK_WEIGHTING_INDEX_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "basisrisk/conditional.hpp"
#include "basisrisk/contracts.hpp"
#include "basisrisk/utility.hpp"
#include "basisrisk/weighting_pure.hpp"

namespace basisrisk {

// e_gamma(S | theta) = h1(theta) H2(gamma) + H3(theta) sampled at knots.
struct SeparableDecomposition {
  std::vector<double> knots;
  std::vector<double> gamma_grid;
  std::vector<double> h1;  // at knots, h1[ref_index] == 1
  std::vector<double> H3;  // at knots, conditional means
  std::vector<double> H2;  // on gamma_grid
  std::size_t ref_index = 0;
  double residual = 0.0;
  // Residual over the knot x level grid, relative to each row's largest
  // centred expectile.
  std::vector<std::vector<double>> residual_map;
};

struct DecomposeOptions {
  double tolerance = 1e-2;
  // Entries smaller than this fraction of their row maximum are left out of
  // the relative residual.
  double mask_fraction = 0.05;
  bool throw_on_violation = true;
};

// 41 logit-spaced levels over logit in [-9, 9]; contains 1/2.
std::vector<double> separability_grid(int points = 41, double logit_span = 9.0);

Eigen::MatrixXd expectile_surface(const ConditionalModel& model, std::span<const double> knots,
                                  std::span<const double> gamma_grid);

// Rank-1 fit of the centred surface. H3 is pinned to the gamma = 1/2 column
// and the reference knot is the median knot. The residual is the largest
// relative deviation over unmasked entries; above tolerance this throws
// SeparabilityError("separability violated").
SeparableDecomposition decompose(const Eigen::MatrixXd& surface, std::span<const double> knots,
                                 std::span<const double> gamma_grid,
                                 const DecomposeOptions& options = {});

// Conditional model together with its decomposition; evaluates H2 at any
// level and h1, H3 at any index value.
class SeparableIndexModel {
 public:
  SeparableIndexModel(const ConditionalModel& model, std::span<const double> triggered_indices,
                      const DecomposeOptions& options = {},
                      std::vector<double> gamma_grid = separability_grid());

  const SeparableDecomposition& decomposition() const { return decomp_; }
  const ConditionalModel& model() const { return model_; }

  // Projection of the centred expectiles at the knots onto h1.
  double H2(Level gamma) const;
  // Level whose H2 equals k; k must lie inside (H2_0, H2_1).
  double H2_inverse(double k) const;
  double H2_0() const { return h2_0_; }
  double H2_1() const { return h2_1_; }
  bool H2_1_unbounded() const { return unbounded_; }

  // h1 from two levels and H3 as the conditional mean, per index value.
  void row_terms(std::span<const double> thetas, std::span<double> h1,
                 std::span<double> H3) const;

 private:
  double project(std::span<const double> values) const;

  const ConditionalModel& model_;
  SeparableDecomposition decomp_;
  double h1_norm_sq_ = 0.0;
  double h2_0_ = 0.0, h2_1_ = 0.0;
  bool unbounded_ = false;
  double h2_ref_level_ = 0.0;  // H2 at the second reference level
};

struct IndexQuantities {
  std::vector<double> h1, H3;          // triggered rows
  std::vector<double> delta1, delta3;  // triggered rows
  double m1 = 0.0, m3 = 0.0;           // E[h1 1_T], E[H3 1_T]
  double V1 = 0.0, V3 = 0.0, V13 = 0.0;
  double bE = 0.0;
  double p_trigger = 0.0;
  double rho = 0.0;

  // 2 rho k V1 + 2 rho V13 + m1.
  double R(double k) const { return m1 + 2.0 * rho * k * V1 + 2.0 * rho * V13; }
  // Variance-principle premium with H2 = k.
  double premium_variance(double k) const {
    return m1 * k + m3 + rho * (k * k * V1 + 2.0 * k * V13 + V3);
  }
};

IndexQuantities index_quantities(const SeparableIndexModel& model, const TriggerSplit& split,
                                 const ContractSpec& spec);

class IndexProblem {
 public:
  // Expected value or variance principle only.
  IndexProblem(const LossIndexSample& sample, const ContractSpec& spec, UtilityContext utility,
               const SeparableIndexModel& model);

  std::pair<double, double> v_at(double k) const;
  double bound_lhs(double k) const;
  double threshold() const;
  double premium_at(double k) const;
  double utility_at(double k) const;
  double utility_no_insurance() const;

  const IndexQuantities& quantities() const { return q_; }
  const SeparableIndexModel& model() const { return model_; }
  const TriggerSplit& split() const { return split_; }
  const ContractSpec& spec() const { return spec_; }
  const UtilityContext& utility() const { return utility_; }
  std::size_t n() const { return n_; }

 private:
  TriggerSplit split_;
  ContractSpec spec_;
  UtilityContext utility_;
  const SeparableIndexModel& model_;
  IndexQuantities q_;
  std::size_t n_;
};

std::pair<double, double> v1_v2_index(const IndexProblem& problem, Level gamma);

BoundCheck check_bounds_index(const IndexProblem& problem, const SolveOptions& options = {});

Decision violated_boundary_decision_index(const IndexProblem& problem, const BoundCheck& bounds,
                                          double indemnity_loading,
                                          WeightingSolution* diag = nullptr);

WeightingSolution solve_gamma_star_index(const IndexProblem& problem,
                                         const SolveOptions& options = {});

}  // namespace basisrisk

#endif  // BASISRISK_WEIGHTING_INDEX_HPP_
