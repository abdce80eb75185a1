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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "basisrisk/analytic.hpp"
#include "basisrisk/errors.hpp"
#include "basisrisk/expectile.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {
namespace {

// Brute-force minimiser of the asymmetric square loss over a fine grid.
double grid_minimiser(const EmpiricalSample& s, double gamma, int points) {
  double best = s.min(), best_loss = INFINITY;
  for (int i = 0; i <= points; ++i) {
    const double y = s.min() + (s.max() - s.min()) * i / points;
    const double l = expectile_loss(s, y, Level(gamma));
    if (l < best_loss) {
      best_loss = l;
      best = y;
    }
  }
  return best;
}

TEST(LevelTest, RejectsClosedEndpoints) {
  EXPECT_THROW(Level(0.0), NumericDomainError);
  EXPECT_THROW(Level(1.0), NumericDomainError);
  EXPECT_THROW(BasisRiskWeight(1.0), NumericDomainError);
  EXPECT_NO_THROW(Level(1e-12));
}

TEST(LevelMapTest, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma_from_alpha(BasisRiskWeight(0.5)).value(), 0.5);
  const double a = 0.587;
  EXPECT_NEAR(gamma_from_alpha(BasisRiskWeight(a)).value(),
              a * a / ((1 - a) * (1 - a) + a * a), 1e-15);
  EXPECT_NEAR(gamma_from_alpha(BasisRiskWeight(0.9)).value(), 0.81 / 0.82, 1e-15);
  EXPECT_NEAR(alpha_from_gamma(Level(0.81 / 0.82)).value(), 0.9, 1e-12);
  EXPECT_DOUBLE_EQ(alpha_from_gamma(Level(0.5)).value(), 0.5);
}

TEST(LevelMapTest, RoundTripOnGrid) {
  for (int i = 1; i <= 99; ++i) {
    const double a = i / 100.0;
    const double back = alpha_from_gamma(gamma_from_alpha(BasisRiskWeight(a))).value();
    EXPECT_NEAR(back, a, 1e-12) << a;
  }
  EXPECT_LT(gamma_from_alpha(BasisRiskWeight(0.3)).value(),
            gamma_from_alpha(BasisRiskWeight(0.31)).value());
}

TEST(EmpiricalSampleTest, Validation) {
  std::vector<double> empty;
  EXPECT_THROW(EmpiricalSample{empty}, DegenerateDataError);
  std::vector<double> bad{1.0, NAN};
  EXPECT_THROW(EmpiricalSample{bad}, NumericDomainError);
  std::vector<double> v{1, 2}, w{0.3, 0.3};
  EXPECT_THROW(EmpiricalSample(v, w), NumericDomainError);
}

TEST(EmpiricalSampleTest, CumulativeSumsCloseOnMean) {
  std::vector<double> v{3, 1, 2, 2, 7};
  EmpiricalSample s(v);
  EXPECT_EQ(s.atoms(), 4u);
  EXPECT_NEAR(s.cumulative_weight(s.atoms() - 1), 1.0, 1e-15);
  EXPECT_NEAR(s.cumulative_value(s.atoms() - 1), s.mean(), 1e-15);
  EXPECT_DOUBLE_EQ(s.mean(), 3.0);
  EXPECT_DOUBLE_EQ(s.midpoint_cdf(2.0), 0.2 + 0.2);
}

TEST(ExpectileTest, TwoPointIsLinear) {
  std::vector<double> v{5, 10};
  EmpiricalSample s(v);
  EXPECT_NEAR(expectile(s, Level(0.3)), 6.5, 1e-12);
  for (int i = 1; i <= 99; ++i) {
    const double g = i / 100.0;
    EXPECT_NEAR(expectile(s, Level(g)), 5 * (1 + g), 1e-10);
    EXPECT_NEAR(expectile_derivative(s, Level(g)), 5.0, 1e-10);
  }
}

TEST(ExpectileTest, HalfIsMean) {
  std::vector<double> v{0.1, 4, 4, 9, 13.5, -2};
  EmpiricalSample s(v);
  EXPECT_NEAR(expectile(s, Level(0.5)), s.mean(), 1e-13);
}

TEST(ExpectileTest, ConstantSample) {
  std::vector<double> v{4, 4, 4};
  EmpiricalSample s(v);
  EXPECT_DOUBLE_EQ(expectile(s, Level(0.9)), 4.0);
  EXPECT_THROW(expectile_derivative(s, Level(0.5)), DegenerateDataError);
}

TEST(ExpectileTest, MatchesGridMinimiser) {
  std::vector<double> v{1, 2, 3};
  EmpiricalSample s(v);
  EXPECT_NEAR(expectile(s, Level(0.7)), grid_minimiser(s, 0.7, 2000000), 1e-6);
}

TEST(ExpectileTest, BeatsBruteForceOnRandomSamples) {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rng.below(49);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.gamma(2.0) * 3.0;
    EmpiricalSample s(v);
    const double g = rng.uniform();
    const double e = expectile(s, Level(g));
    const double le = expectile_loss(s, e, Level(g));
    for (int i = 0; i <= 10000; ++i) {
      const double y = s.min() + (s.max() - s.min()) * i / 10000.0;
      ASSERT_LE(le, expectile_loss(s, y, Level(g)) + 1e-12);
    }
  }
}

TEST(ExpectileTest, MonotoneAndLimits) {
  std::vector<double> v{0.5, 1.5, 2, 8, 9};
  EmpiricalSample s(v);
  double prev = -INFINITY;
  for (int i = 1; i < 200; ++i) {
    const double e = expectile(s, Level(i / 200.0));
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_NEAR(expectile(s, Level(1e-9)), 0.5, 1e-7);
  EXPECT_NEAR(expectile(s, Level(1 - 1e-9)), 9.0, 1e-7);
}

TEST(ExpectileTest, AffineEquivariance) {
  std::vector<double> v{0.5, 1.5, 2, 8, 9}, w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = 2.5 * v[i] - 3.0;
  EmpiricalSample s(v), t(w);
  for (double g : {0.05, 0.3, 0.77}) {
    EXPECT_NEAR(expectile(t, Level(g)), 2.5 * expectile(s, Level(g)) - 3.0, 1e-12);
  }
}

TEST(ExpectileTest, WeightedMatchesRepeated) {
  std::vector<double> v{1, 4}, w{0.25, 0.75}, rep{1, 4, 4, 4};
  EmpiricalSample a(v, w), b(rep);
  EXPECT_NEAR(expectile(a, Level(0.2)), expectile(b, Level(0.2)), 1e-13);
}

TEST(ExpectileDerivativeTest, FiniteDifference) {
  std::vector<double> v{1, 2, 3};
  EmpiricalSample s(v);
  const double h = 1e-5, g = 0.7;
  const double fd = (expectile(s, Level(g + h)) - expectile(s, Level(g - h))) / (2 * h);
  EXPECT_NEAR(expectile_derivative(s, Level(g)) / fd, 1.0, 1e-4);
}

TEST(ExpectileDerivativeTest, SymmetricAtHalf) {
  std::vector<double> v{-2, -1, 1, 2};
  EmpiricalSample s(v);
  EXPECT_NEAR(expectile_derivative(s, Level(0.5)), 2 * 1.5, 1e-12);
}

TEST(ExpectileLevelTest, InvertsExpectile) {
  std::vector<double> v{0.2, 3, 3.5, 10};
  EmpiricalSample s(v);
  for (double g : {0.01, 0.4, 0.95}) {
    EXPECT_NEAR(expectile_level(s, expectile(s, Level(g))), g, 1e-12);
  }
}

TEST(LambertTest, KnownPoints) {
  EXPECT_DOUBLE_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(std::numbers::e), 1.0, 1e-14);
  EXPECT_NEAR(lambert_w0(-1.0 / std::numbers::e), -1.0, 1e-7);
  EXPECT_THROW(lambert_w0(-0.4), NumericDomainError);
  for (double x : {-0.3, -0.01, 1e-8, 0.5, 3.0, 100.0, 1e10}) {
    const double w = lambert_w0(x);
    EXPECT_NEAR(w * std::exp(w), x, 1e-12 * std::max(1.0, std::abs(x))) << x;
  }
}

TEST(AnalyticExpectileTest, Exponential) {
  EXPECT_NEAR(expectile_exponential(1.0, Level(0.5)), 1.0, 1e-14);
  EXPECT_NEAR(expectile_exponential(2.0, Level(0.8)),
              2.0 * expectile_exponential(1.0, Level(0.8)), 1e-14);
  // Monte Carlo check against 1e6 Exp(1) draws.
  Rng rng(3);
  std::vector<double> v(1000000);
  for (auto& x : v) x = rng.exponential();
  EmpiricalSample s(v);
  const double se = 2.0 / std::sqrt(1e6);
  EXPECT_NEAR(expectile(s, Level(0.8)), expectile_exponential(1.0, Level(0.8)), 3 * se);
}

TEST(AnalyticExpectileTest, GammaWithUnitShapeIsExponential) {
  for (double g : {0.1, 0.5, 0.93}) {
    EXPECT_NEAR(expectile_gamma(1.0, 3.0, Level(g)), expectile_exponential(3.0, Level(g)),
                1e-9);
  }
  EXPECT_NEAR(expectile_gamma(2.5, 2.0, Level(0.5)), 5.0, 1e-9);
}

TEST(AnalyticExpectileTest, BetaSymmetry) {
  EXPECT_NEAR(expectile_beta(3, 3, Level(0.5)), 0.5, 1e-10);
  EXPECT_NEAR(expectile_beta(3, 3, Level(0.2)) + expectile_beta(3, 3, Level(0.8)), 1.0, 1e-9);
  EXPECT_NEAR(expectile_beta(2, 5, Level(0.5)), 2.0 / 7.0, 1e-10);
}

}  // namespace
}  // namespace basisrisk
