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

#include "basisrisk/dependence.hpp"
#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {
namespace {

PairedObservations independent(std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  PairedObservations p;
  for (std::size_t i = 0; i < m; ++i) {
    p.x.push_back(rng.uniform());
    p.y.push_back(rng.uniform());
  }
  return p;
}

TEST(ConditionalProbabilityTest, HandBuilt) {
  // Three sites over five tracks.
  const std::vector<std::vector<double>> w{
      {0, 90, 70, 85, 0},
      {50, 95, 0, 84, 0},
      {0, 0, 0, 0, 0},
  };
  const ConditionalProbabilities cp = conditional_probabilities(w, 83);
  EXPECT_FALSE(cp.p_inc[0][0]);
  EXPECT_DOUBLE_EQ(*cp.p_inc[0][1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*cp.p_inc[1][0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*cp.p_trig[1][0], 1.0);
  EXPECT_DOUBLE_EQ(*cp.p_inc[2][0], 0.0);
  EXPECT_FALSE(cp.p_inc[0][2]);
  EXPECT_FALSE(cp.warnings.empty());
  const ConditionalProbabilities same = conditional_probabilities({w[0], w[0]}, 83);
  EXPECT_DOUBLE_EQ(*same.p_inc[0][1], 1.0);
}

TEST(KendallTest, Examples) {
  EXPECT_NEAR(kendall_tau({{1, 2, 3}, {1, 3, 2}}), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(kendall_tau({{1, 2, 3, 4}, {1, 2, 3, 4}}), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau({{1, 2, 3, 4}, {4, 3, 2, 1}}), -1.0);
  EXPECT_THROW(kendall_tau({{1, 2, 3}, {5, 5, 5}}), DegenerateDataError);
}

TEST(KendallTest, MatchesQuadraticCountWithTies) {
  Rng rng(9);
  PairedObservations p;
  for (int i = 0; i < 300; ++i) {
    p.x.push_back(static_cast<double>(rng.below(20)));
    p.y.push_back(static_cast<double>(rng.below(15)));
  }
  double c = 0, d = 0, tx = 0, ty = 0;
  for (std::size_t i = 0; i < p.m(); ++i) {
    for (std::size_t j = i + 1; j < p.m(); ++j) {
      const double s = (p.x[i] - p.x[j]) * (p.y[i] - p.y[j]);
      if (s > 0) ++c;
      if (s < 0) ++d;
      if (p.x[i] == p.x[j] && p.y[i] != p.y[j]) ++tx;
      if (p.y[i] == p.y[j] && p.x[i] != p.x[j]) ++ty;
    }
  }
  const double tau = (c - d) / std::sqrt((c + d + tx) * (c + d + ty));
  EXPECT_NEAR(kendall_tau(p), tau, 1e-12);
}

TEST(ChatterjeeTest, Examples) {
  PairedObservations p;
  for (int i = 0; i < 10; ++i) {
    p.x.push_back(i * 1.5);
    p.y.push_back(i * 1.5);
  }
  EXPECT_DOUBLE_EQ(chatterjee_xi(p), 8.0 / 11.0);
  EXPECT_LE(std::abs(chatterjee_xi(independent(10000, 2))), 0.05);
  EXPECT_THROW(chatterjee_xi({{1, 2, 3}, {4, 4, 4}}), DegenerateDataError);
}

TEST(ChatterjeeTest, TiesAreSeeded) {
  PairedObservations p{{1, 1, 2, 2, 3, 3}, {1, 2, 3, 4, 5, 6}};
  EXPECT_EQ(chatterjee_xi(p, 4), chatterjee_xi(p, 4));
}

TEST(RankTest, StrictRanksBreakTiesByPosition) {
  EXPECT_EQ(strict_ranks({3.0, 1.0, 3.0, 2.0}), (std::vector<std::size_t>{3, 1, 4, 2}));
}

TEST(TailTest, Extremes) {
  PairedObservations co, counter;
  for (int i = 0; i < 40; ++i) {
    co.x.push_back(i);
    co.y.push_back(i * i);
    counter.x.push_back(i);
    counter.y.push_back(-i);
  }
  for (std::size_t k : {1u, 5u, 20u, 39u}) EXPECT_DOUBLE_EQ(tail_lambda(co, k), 1.0);
  for (std::size_t k : {1u, 5u, 20u}) EXPECT_DOUBLE_EQ(tail_lambda(counter, k), 0.0);
}

TEST(TailTest, HandBuilt) {
  PairedObservations p{{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {2, 1, 4, 3, 10, 6, 8, 5, 9, 7}};
  // Top three in x are rows 8..10, top three in y are rows 5, 7, 9.
  EXPECT_DOUBLE_EQ(tail_lambda(p, 3), 1.0 / 3.0);
  const auto curve = tail_lambda_curve(p);
  EXPECT_DOUBLE_EQ(curve[2], 1.0 / 3.0);
}

TEST(PlateauTest, Gumbel) {
  const PairedObservations p = simulate_gumbel(2000, 2.0, 5);
  const PlateauResult r = plateau_k(p);
  EXPECT_NEAR(r.lambda, 2 - std::sqrt(2.0), 0.08);
  EXPECT_THROW(plateau_k(independent(10, 1)), DegenerateDataError);
}

TEST(PlateauTest, Independence) {
  EXPECT_LE(plateau_k(independent(2000, 12)).lambda, 0.1);
}

TEST(GumbelTest, Recovery) {
  EXPECT_NEAR(gumbel_mle(simulate_gumbel(2000, 2.0, 7)).eta, 2.0, 0.15);
  EXPECT_NEAR(gumbel_mle(independent(2000, 13)).eta, 1.0, 0.05);
  PairedObservations co;
  for (int i = 0; i < 200; ++i) {
    co.x.push_back(i);
    co.y.push_back(i);
  }
  const GumbelFit fit = gumbel_mle(co);
  ASSERT_FALSE(fit.warnings.empty());
  EXPECT_EQ(fit.warnings[0], "near-degenerate dependence");
}

TEST(GumbelTest, DensityIntegratesToOne) {
  double acc = 0;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc += std::exp(gumbel_log_density((i + 0.5) / n, (j + 0.5) / n, 1.7));
    }
  }
  EXPECT_NEAR(acc / (n * n), 1.0, 2e-2);
  EXPECT_NEAR(gumbel_log_density(0.3, 0.8, 1.0), 0.0, 1e-12);
}

TEST(TailVarianceTest, ClosedForm) {
  EXPECT_EQ(sigma_u_sq(1.0), 0.0);
  EXPECT_NEAR(sigma_u_sq(2.0), (std::pow(2, 1.5) - 2) * (std::pow(2, -0.5) - 0.5), 1e-15);
  EXPECT_NEAR(sigma_u_sq(2.0), 0.17157, 1e-5);
  EXPECT_THROW(sigma_u_sq(0.9), NumericDomainError);
  for (double eta : {5.0, 50.0, 1e4}) {
    EXPECT_TRUE(std::isfinite(sigma_u_sq(eta)));
    EXPECT_GE(sigma_u_sq(eta), 0.0);
  }
}

TEST(TailVarianceTest, Intervals) {
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(0.01), -2.326347874040841, 1e-12);
  const auto [lo, hi] = tail_ci(0.5, 40, 2.0);
  EXPECT_NEAR(0.5 * (hi - lo), 0.1284, 1e-4);
  const auto [dlo, dhi] = tail_ci(0.3, 40, 1.0);
  EXPECT_EQ(dlo, 0.3);
  EXPECT_EQ(dhi, 0.3);
}

TEST(TailEstimateTest, EndToEnd) {
  const TailEstimate t = estimate_tail(simulate_gumbel(2000, 2.0, 21));
  EXPECT_EQ(t.m, 2000u);
  EXPECT_GT(t.k, 0u);
  EXPECT_LE(t.ci_low, t.lambda_hat);
  EXPECT_GE(t.ci_high, t.lambda_hat);
}

}  // namespace
}  // namespace basisrisk
