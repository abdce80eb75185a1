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

#ifndef BASISRISK_DEPENDENCE_HPP_
#define BASISRISK_DEPENDENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace basisrisk {

struct PairedObservations {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t m() const noexcept { return x.size(); }
  // Equal length, at least 2, finite.
  void validate() const;
};

using ProbabilityMatrix = std::vector<std::vector<std::optional<double>>>;

struct ConditionalProbabilities {
  // p_inc[a][b] = P(theta_a > 0 | theta_b > 0); diagonal left empty.
  ProbabilityMatrix p_inc;
  // p_trig[a][b] = P(theta_a >= threshold | theta_b >= threshold).
  ProbabilityMatrix p_trig;
  std::vector<std::string> warnings;
};

// winds[site][row]. Entries whose conditioning event never occurs stay
// empty and add a warning.
ConditionalProbabilities conditional_probabilities(const std::vector<std::vector<double>>& winds,
                                                   double threshold);

// Tie-corrected tau_b in O(m log m) by merge-sort inversion counting.
// Throws DegenerateDataError("zero variance ranks") if a column is constant.
double kendall_tau(const PairedObservations& pairs);

// Rank correlation xi with ties in x broken at random (seeded). The sum of
// rank jumps is scaled by m, which gives (m - 2) / (m + 1) on y = x.
double chatterjee_xi(const PairedObservations& pairs, std::uint64_t seed = 0);

// Ranks 1..m from a stable sort; ties keep input order.
std::vector<std::size_t> strict_ranks(const std::vector<double>& v);

// (1/k) #{j : r_x > m - k, r_y > m - k}.
double tail_lambda(const PairedObservations& pairs, std::size_t k);
// The same for every k = 1 .. m - 1; entry k - 1 holds k.
std::vector<double> tail_lambda_curve(const PairedObservations& pairs);

struct PlateauOptions {
  double bandwidth_fraction = 0.005;
  double range_factor = 2.0;
};

struct PlateauResult {
  std::size_t k = 0;
  double lambda = 0.0;
  bool fallback = false;
  std::vector<std::string> warnings;
};

// Smooths k -> lambda(k) with a centred moving average and returns the
// middle of the first flat window. Needs m >= 30.
PlateauResult plateau_k(const PairedObservations& pairs, const PlateauOptions& options = {});

struct GumbelFit {
  double eta = 1.0;
  double log_likelihood = 0.0;
  std::vector<std::string> warnings;
};

double gumbel_log_density(double u, double v, double eta);

// Pseudo-likelihood on u_j = rank_j / (m + 1), golden section on [1, 50].
GumbelFit gumbel_mle(const PairedObservations& pairs);

// Asymptotic variance of the tail estimator under a Gumbel copula.
double sigma_u_sq(double eta);

double normal_quantile(double p);

struct TailEstimate {
  std::size_t m = 0;
  std::size_t k = 0;
  double lambda_hat = 0.0;
  double eta_hat = 1.0;
  double sigma_u_sq = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<std::string> warnings;
};

std::pair<double, double> tail_ci(double lambda_hat, std::size_t k, double eta_hat,
                                  double level = 0.95);

TailEstimate estimate_tail(const PairedObservations& pairs, const PlateauOptions& options = {});

// Gumbel-Hougaard copula draws by the Marshall-Olkin frailty construction
// with a positive stable frailty.
PairedObservations simulate_gumbel(std::size_t m, double eta, std::uint64_t seed);

}  // namespace basisrisk

#endif  // BASISRISK_DEPENDENCE_HPP_
