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

#ifndef BASISRISK_EXPECTILE_HPP_
#define BASISRISK_EXPECTILE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace basisrisk {

// Expectile level gamma in the open unit interval.
class Level {
 public:
  explicit Level(double gamma);
  double value() const noexcept { return gamma_; }

 private:
  double gamma_;
};

// Relative weight alpha of negative against positive basis risk.
class BasisRiskWeight {
 public:
  explicit BasisRiskWeight(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

Level gamma_from_alpha(BasisRiskWeight alpha);
BasisRiskWeight alpha_from_gamma(Level gamma);

// Discrete distribution on the real line. Atoms are merged and sorted at
// construction; prefix and suffix partial sums are cached so that partial
// moments E[(y - X)+] and E[(X - y)+] cost one binary search.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::span<const double> values);
  EmpiricalSample(std::span<const double> values,
                  std::span<const double> weights);

  std::size_t size() const noexcept { return n_; }
  // Number of distinct atoms.
  std::size_t atoms() const noexcept { return x_.size(); }
  const std::vector<double>& support() const noexcept { return x_; }
  const std::vector<double>& probabilities() const noexcept { return w_; }

  double mean() const noexcept { return mean_; }
  double min() const noexcept { return x_.front(); }
  double max() const noexcept { return x_.back(); }
  bool is_constant() const noexcept { return x_.size() == 1; }

  // Weight / weighted value of atoms 0..i, and of atoms strictly above i.
  double cumulative_weight(std::size_t i) const { return cw_[i + 1]; }
  double cumulative_value(std::size_t i) const { return cv_[i + 1]; }
  double suffix_weight(std::size_t i) const { return sw_[i + 1]; }
  double suffix_value(std::size_t i) const { return sv_[i + 1]; }

  double lower_partial_moment(double y) const;  // E[(y - X)+]
  double upper_partial_moment(double y) const;  // E[(X - y)+]
  double mean_absolute_deviation(double y) const;
  // P(X < y) + P(X = y) / 2.
  double midpoint_cdf(double y) const;

 private:
  void build(std::vector<double> values, std::vector<double> weights);
  // Largest i with x_[i] <= y, or -1.
  std::ptrdiff_t locate(double y) const;

  std::size_t n_ = 0;
  std::vector<double> x_, w_;
  // Indexed by the number of leading atoms: cw_[j] sums atoms 0..j-1 and
  // sw_[j] sums atoms j..end.
  std::vector<double> cw_, cv_;
  std::vector<double> sw_, sv_;
  double mean_ = 0.0;
};

// Unique root of gamma E[(X - y)+] = (1 - gamma) E[(y - X)+]; solved exactly
// on the bracketing interval between consecutive atoms.
double expectile(const EmpiricalSample& sample, Level gamma);

// d/dgamma e_gamma(X) = E|X - e| / ((1 - gamma) F(e) + gamma (1 - F(e))) with
// the midpoint convention for F at atoms.
double expectile_derivative(const EmpiricalSample& sample, Level gamma);

// Inverse map: the level whose expectile equals y, for min < y < max.
double expectile_level(const EmpiricalSample& sample, double y);

// Mean asymmetric squared loss gamma (X - y)+^2 + (1 - gamma) (X - y)-^2.
double expectile_loss(const EmpiricalSample& sample, double y, Level gamma);

}  // namespace basisrisk

#endif  // BASISRISK_EXPECTILE_HPP_
