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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "basisrisk/contracts.hpp"
#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"
#include "basisrisk/scenarios.hpp"
#include "basisrisk/weighting_pure.hpp"

namespace basisrisk {
namespace {

struct RandomSetup {
  LossIndexSample sample;
  ContractSpec spec;
  UtilityContext utility;
};

// Triggered rows carry heavier losses than the rest.
RandomSetup random_setup(Rng& rng, PremiumPrinciple principle, bool exponential = true) {
  RandomSetup s{{}, {}, {Utility::exponential(0.02 + 0.2 * rng.uniform()), 100.0}};
  if (!exponential) s.utility = {Utility::power(1.2 + 2.0 * rng.uniform()), 150.0};
  const std::size_t n = 200 + rng.below(800);
  const double pt = 0.2 + 0.5 * rng.uniform();
  const double scale_t = 2.0 + 8.0 * rng.uniform();
  const double scale_n = 0.2 + 2.0 * rng.uniform();
  for (std::size_t i = 0; i < n; ++i) {
    const bool trig = rng.uniform() < pt;
    s.sample.indices.push_back(trig ? 1.0 : 0.0);
    s.sample.losses.push_back(std::min((trig ? scale_t : scale_n) * rng.gamma(2.0), 80.0));
  }
  s.spec.trigger.lo = 0.5;
  s.spec.principle = principle;
  s.spec.rho = 0.02 + 0.3 * rng.uniform();
  return s;
}

TEST(ToyPortfolioTest, HolderOne) {
  const Scenario sc = toy_portfolio(1);
  const PureProblem p(sc.sample, sc.spec, sc.utility);
  const WeightingSolution sol = solve_gamma_star(p);
  EXPECT_FALSE(sol.lower_bound_holds);
  EXPECT_TRUE(sol.upper_bound_holds);
  EXPECT_NEAR(p.threshold(), 1 + 0.1 / (1 - 1.1 * 0.5), 1e-12);
  ASSERT_TRUE(sol.v0 && sol.utility_limit && sol.utility_no_insurance);
  EXPECT_NEAR(*sol.v0, 1.753, 5e-3);
  EXPECT_NEAR(*sol.utility_no_insurance, 0.369, 5e-3);
  EXPECT_NEAR(*sol.utility_limit, 0.378, 5e-3);
  EXPECT_EQ(sol.decision, Decision::PreferSmallestAlpha);
  EXPECT_FALSE(sol.gamma_star);
}

TEST(ToyPortfolioTest, HolderTwo) {
  const Scenario sc = toy_portfolio(2);
  const WeightingSolution sol = solve_gamma_star(PureProblem(sc.sample, sc.spec, sc.utility));
  EXPECT_FALSE(sol.lower_bound_holds);
  ASSERT_TRUE(sol.utility_limit);
  EXPECT_NEAR(*sol.utility_limit, 0.362, 5e-3);
  EXPECT_EQ(sol.decision, Decision::PreferNoInsurance);
}

TEST(ToyPortfolioTest, HolderThree) {
  const Scenario sc = toy_portfolio(3);
  const PureProblem p(sc.sample, sc.spec, sc.utility);
  const WeightingSolution sol = solve_gamma_star(p);
  EXPECT_FALSE(sol.lower_bound_holds);
  ASSERT_TRUE(sol.v0);
  EXPECT_NEAR(*sol.v0, 2.074, 5e-3);
  EXPECT_NEAR(p.threshold(), 2.364, 5e-3);
  EXPECT_FALSE(sol.utility_limit);  // decided without the utility comparison
  EXPECT_EQ(sol.decision, Decision::PreferNoInsurance);
}

TEST(ToyPortfolioTest, LowerBoundAtZeroInfEqualsV0) {
  // Shift holder one so the triggered minimum is zero.
  Scenario sc = toy_portfolio(1);
  sc.sample.losses = {0, 10, 0, 4};
  const PureProblem p(sc.sample, sc.spec, sc.utility);
  const BoundCheck bc = check_bounds(p);
  const auto& u = sc.utility.utility;
  const double v0 = (u.du(10) + u.du(0)) / (u.du(10) + u.du(6));
  EXPECT_NEAR(bc.lower_lhs, v0, 1e-12);
}

TEST(PureWeightingTest, ClosedFormAgreesWithBisection) {
  Rng rng(101);
  int checked = 0;
  for (int rep = 0; rep < 200 && checked < 20; ++rep) {
    RandomSetup s = random_setup(rng, PremiumPrinciple::ExpectedValue);
    const PureProblem p(s.sample, s.spec, s.utility);
    const WeightingSolution sol = solve_gamma_star(p);
    if (sol.decision != Decision::InteriorOptimum) continue;
    const ClosedForm cf = closed_form_exponential(p);
    EXPECT_NEAR(cf.gamma_star, *sol.gamma_star, 1e-6);
    EXPECT_NEAR(cf.alpha_star, *sol.alpha_star, 1e-6);
    ++checked;
  }
  EXPECT_EQ(checked, 20);
}

TEST(PureWeightingTest, WealthInvariance) {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    RandomSetup s = random_setup(rng, PremiumPrinciple::ExpectedValue);
    const PureProblem a(s.sample, s.spec, s.utility);
    if (solve_gamma_star(a).decision != Decision::InteriorOptimum) continue;
    s.utility.w0 = 3.0;
    const PureProblem b(s.sample, s.spec, s.utility);
    EXPECT_EQ(closed_form_exponential(a).x_exp, closed_form_exponential(b).x_exp);
    EXPECT_NEAR(*solve_gamma_star(a).alpha_star, *solve_gamma_star(b).alpha_star, 1e-8);
    return;
  }
  FAIL() << "no interior setup found";
}

TEST(PureWeightingTest, TracesAreMonotone) {
  Rng rng(17);
  for (auto principle : {PremiumPrinciple::ExpectedValue, PremiumPrinciple::StdDev,
                         PremiumPrinciple::Variance}) {
    for (int rep = 0; rep < 10; ++rep) {
      RandomSetup s = random_setup(rng, principle, rep % 2 == 0);
      if (principle == PremiumPrinciple::Variance) s.spec.rho *= 0.05;
      const PureProblem p(s.sample, s.spec, s.utility);
      double v1p = INFINITY, v2p = -INFINITY;
      int sign_changes = 0;
      double prev_gap = 0;
      for (int i = 1; i <= 200; ++i) {
        const auto [v1, v2] = v1_v2(p, Level(i / 201.0));
        EXPECT_LT(v1, v1p + 1e-12);
        EXPECT_GT(v2, v2p - 1e-12);
        if (i > 1 && (v1 - v2) * prev_gap < 0) ++sign_changes;
        prev_gap = v1 - v2;
        v1p = v1;
        v2p = v2;
      }
      EXPECT_LE(sign_changes, 1);
    }
  }
}

TEST(PureWeightingTest, SolutionSatisfiesResidual) {
  Rng rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    RandomSetup s = random_setup(rng, PremiumPrinciple::StdDev, rep % 2 == 0);
    const PureProblem p(s.sample, s.spec, s.utility);
    const WeightingSolution sol = solve_gamma_star(p);
    // At most one bound fails.
    EXPECT_TRUE(sol.lower_bound_holds || sol.upper_bound_holds);
    if (!sol.gamma_star) continue;
    EXPECT_GT(*sol.gamma_star, 0.0);
    EXPECT_LT(*sol.gamma_star, 1.0);
    const auto [v1, v2] = p.v_at(sol.k_star);
    EXPECT_LE(std::abs(v1 - v2), 1e-9 * (v1 + v2));
  }
}

TEST(PureWeightingTest, VarianceMatchesExpectedValueAsLoadingVanishes) {
  Rng rng(5);
  RandomSetup s = random_setup(rng, PremiumPrinciple::Variance);
  s.spec.rho = 1e-12;
  const PureProblem pv(s.sample, s.spec, s.utility);
  s.spec.principle = PremiumPrinciple::ExpectedValue;
  const PureProblem pe(s.sample, s.spec, s.utility);
  for (double g : {0.1, 0.5, 0.9}) {
    const auto [a1, a2] = v1_v2(pv, Level(g));
    const auto [b1, b2] = v1_v2(pe, Level(g));
    EXPECT_NEAR(a1, b1, 1e-9 * b1);
    EXPECT_NEAR(a2, b2, 1e-9 * b2);
  }
}

TEST(PureWeightingTest, RestrictedIntervalEndpoint) {
  const Scenario sc = toy_portfolio(1);
  SolveOptions opt;
  opt.restrict = std::pair{0.2, 0.6};
  const WeightingSolution sol = solve_gamma_star(PureProblem(sc.sample, sc.spec, sc.utility), opt);
  EXPECT_EQ(sol.decision, Decision::EndpointLow);
  EXPECT_DOUBLE_EQ(*sol.gamma_star, 0.2);
}

TEST(PureWeightingTest, PremiumDominatesPayout) {
  Scenario sc = toy_portfolio(1);
  sc.spec.rho = 1.5;  // (1 + rho) P(T) >= 1
  EXPECT_THROW(PureProblem(sc.sample, sc.spec, sc.utility), NumericDomainError);
}

TEST(PureWeightingTest, NonConcaveUtilityRejected) {
  Scenario sc = toy_portfolio(1);
  sc.utility.utility = Utility::custom([](double x) { return x * x; },
                                       [](double x) { return 2 * x; },
                                       [](double) { return 2.0; });
  EXPECT_THROW(
      {
        const PureProblem p(sc.sample, sc.spec, sc.utility);
        solve_gamma_star(p);
      },
      std::exception);
}

TEST(UtilityCurveTest, SinglePointAtHalf) {
  const Scenario sc = toy_portfolio(1);
  const auto curve = utility_curve(sc.sample, sc.spec, sc.utility, {0.5});
  ASSERT_EQ(curve.size(), 1u);
  const PureProblem p(sc.sample, sc.spec, sc.utility);
  EXPECT_NEAR(curve[0].u, p.utility_at(7.5), 1e-14);
  EXPECT_NEAR(curve[0].u1 + curve[0].u2, curve[0].u, 1e-14);
}

}  // namespace
}  // namespace basisrisk
