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

#include "basisrisk/expectile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "basisrisk/errors.hpp"

namespace basisrisk {

Level::Level(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw NumericDomainError("expectile level must lie in (0, 1), got " +
                             std::to_string(gamma));
  }
}

BasisRiskWeight::BasisRiskWeight(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw NumericDomainError("basis risk weight must lie in (0, 1), got " +
                             std::to_string(alpha));
  }
}

Level gamma_from_alpha(BasisRiskWeight alpha) {
  const double a = alpha.value();
  const double b = 1.0 - a;
  return Level(a * a / (b * b + a * a));
}

BasisRiskWeight alpha_from_gamma(Level gamma) {
  const double g = gamma.value();
  if (g == 0.5) return BasisRiskWeight(0.5);
  // Equivalent to (g - sqrt(g - g^2)) / (2g - 1) but free of the 0/0
  // cancellation near one half: alpha / (1 - alpha) = sqrt(g / (1 - g)).
  const double s = std::sqrt(g);
  const double t = std::sqrt(1.0 - g);
  return BasisRiskWeight(s / (s + t));
}

EmpiricalSample::EmpiricalSample(std::span<const double> values) {
  if (values.empty()) throw DegenerateDataError("empty sample");
  std::vector<double> w(values.size(), 1.0 / static_cast<double>(values.size()));
  build({values.begin(), values.end()}, std::move(w));
}

EmpiricalSample::EmpiricalSample(std::span<const double> values,
                                 std::span<const double> weights) {
  if (values.empty()) throw DegenerateDataError("empty sample");
  if (weights.size() != values.size()) {
    throw NumericDomainError("weights and values differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw NumericDomainError("weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw NumericDomainError("weights must sum to one");
  }
  build({values.begin(), values.end()}, {weights.begin(), weights.end()});
}

void EmpiricalSample::build(std::vector<double> values,
                            std::vector<double> weights) {
  n_ = values.size();
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericDomainError("non-finite sample value");
  }
  std::vector<std::size_t> order(n_);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  for (std::size_t k : order) {
    if (weights[k] == 0.0) continue;
    if (!x_.empty() && x_.back() == values[k]) {
      w_.back() += weights[k];
    } else {
      x_.push_back(values[k]);
      w_.push_back(weights[k]);
    }
  }
  if (x_.empty()) throw DegenerateDataError("empty sample");

  const std::size_t m = x_.size();
  cw_.assign(m + 1, 0.0);
  cv_.assign(m + 1, 0.0);
  sw_.assign(m + 1, 0.0);
  sv_.assign(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cw_[i + 1] = cw_[i] + w_[i];
    cv_[i + 1] = cv_[i] + w_[i] * x_[i];
  }
  for (std::size_t i = m; i-- > 0;) {
    sw_[i] = sw_[i + 1] + w_[i];
    sv_[i] = sv_[i + 1] + w_[i] * x_[i];
  }
  // Renormalise so that the last cumulative weight is exactly one.
  const double total = cw_[m];
  for (auto* v : {&w_, &cw_, &cv_, &sw_, &sv_}) {
    for (double& z : *v) z /= total;
  }
  cw_[m] = 1.0;
  sw_[0] = 1.0;
  mean_ = cv_[m];
}

std::ptrdiff_t EmpiricalSample::locate(double y) const {
  return std::upper_bound(x_.begin(), x_.end(), y) - x_.begin() - 1;
}

// Arrays are indexed by the number of atoms at or below y.
double EmpiricalSample::lower_partial_moment(double y) const {
  const std::size_t j = static_cast<std::size_t>(locate(y) + 1);
  return std::max(0.0, y * cw_[j] - cv_[j]);
}

double EmpiricalSample::upper_partial_moment(double y) const {
  const std::size_t j = static_cast<std::size_t>(locate(y) + 1);
  return std::max(0.0, sv_[j] - y * sw_[j]);
}

double EmpiricalSample::mean_absolute_deviation(double y) const {
  return lower_partial_moment(y) + upper_partial_moment(y);
}

double EmpiricalSample::midpoint_cdf(double y) const {
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() *
                     std::max({1.0, std::abs(y), std::abs(x_.back()),
                               std::abs(x_.front())});
  const auto lo = std::lower_bound(x_.begin(), x_.end(), y - tol) - x_.begin();
  const auto hi = std::upper_bound(x_.begin(), x_.end(), y + tol) - x_.begin();
  const double below = cw_[static_cast<std::size_t>(lo)];
  const double at = cw_[static_cast<std::size_t>(hi)] - below;
  return below + 0.5 * at;
}

double expectile(const EmpiricalSample& s, Level level) {
  if (s.is_constant()) return s.min();
  const double g = level.value();
  const auto& x = s.support();
  auto balance = [&](double y) {
    return g * s.upper_partial_moment(y) - (1.0 - g) * s.lower_partial_moment(y);
  };
  // balance() is decreasing; find the last atom where it is still >= 0.
  std::size_t lo = 0, hi = x.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (balance(x[mid]) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // On [x_lo, x_lo+1] both partial moments are linear in y.
  const double num = g * s.suffix_value(lo) + (1.0 - g) * s.cumulative_value(lo);
  const double den = g * s.suffix_weight(lo) + (1.0 - g) * s.cumulative_weight(lo);
  return std::clamp(num / den, x[lo], x[lo + 1]);
}

double expectile_derivative(const EmpiricalSample& s, Level level) {
  if (s.is_constant()) throw DegenerateDataError("degenerate distribution");
  const double g = level.value();
  const double e = expectile(s, level);
  const double f = s.midpoint_cdf(e);
  return s.mean_absolute_deviation(e) / ((1.0 - g) * f + g * (1.0 - f));
}

double expectile_level(const EmpiricalSample& s, double y) {
  if (s.is_constant()) throw DegenerateDataError("degenerate distribution");
  if (!(y > s.min() && y < s.max())) {
    throw NumericDomainError("expectile value outside the open support hull");
  }
  const double lower = s.lower_partial_moment(y);
  const double upper = s.upper_partial_moment(y);
  return lower / (lower + upper);
}

double expectile_loss(const EmpiricalSample& s, double y, Level level) {
  const double g = level.value();
  const auto& x = s.support();
  const auto& w = s.probabilities();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y;
    acc += w[i] * (d > 0.0 ? g : 1.0 - g) * d * d;
  }
  return acc;
}

}  // namespace basisrisk
