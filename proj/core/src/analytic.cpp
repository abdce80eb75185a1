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

#include "basisrisk/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "basisrisk/errors.hpp"

namespace basisrisk {
namespace {

constexpr double kInvE = 0.36787944117144232160;

double w0_initial_guess(double x) {
  if (x < -0.32) {
    // Series about the branch point in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 0.6) return x * (1.0 + x * (-1.0 + 1.5 * x));
  if (x < std::exp(1.0)) return std::log1p(x) * 0.75;
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw NumericDomainError("lambert_w0: NaN argument");
  if (x < -kInvE) {
    // Allow rounding of the branch point itself.
    if (x > -kInvE - 4.0 * std::numeric_limits<double>::epsilon()) return -1.0;
    throw NumericDomainError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;
  if (std::isinf(x)) return x;

  double w = w0_initial_guess(x);
  for (int it = 0; it < 20; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return std::max(w, -1.0);
}

double expectile_exponential(double mean, Level gamma) {
  if (!(mean > 0.0)) throw NumericDomainError("exponential mean must be > 0");
  const double g = gamma.value();
  return mean * (1.0 + lambert_w0((2.0 * g - 1.0) / (1.0 - g) * kInvE));
}

double expectile_from_partial_moments(
    const std::function<double(double)>& lower,
    const std::function<double(double)>& upper, double mean, double lo,
    double hi, Level gamma) {
  const double g = gamma.value();
  auto balance = [&](double y) { return g * upper(y) - (1.0 - g) * lower(y); };
  if (std::isinf(hi)) {
    double step = std::max(1.0, std::abs(mean));
    hi = mean + step;
    while (balance(hi) > 0.0) {
      step *= 2.0;
      hi = mean + step;
      if (!std::isfinite(hi)) throw NumericDomainError("expectile bracket diverged");
    }
  }
  const double flo = balance(lo);
  const double fhi = balance(hi);
  if (flo <= 0.0) return lo;
  if (fhi >= 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      balance, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50),
      iters);
  return 0.5 * (r.first + r.second);
}

double expectile_gamma(double shape, double scale, Level gamma) {
  if (!(shape > 0.0 && scale > 0.0)) {
    throw NumericDomainError("gamma shape and scale must be > 0");
  }
  const double m = shape * scale;
  auto lower = [=](double y) {
    if (y <= 0.0) return 0.0;
    const double z = y / scale;
    return y * boost::math::gamma_p(shape, z) -
           m * boost::math::gamma_p(shape + 1.0, z);
  };
  auto upper = [=](double y) {
    if (y <= 0.0) return m - y;
    const double z = y / scale;
    return m * boost::math::gamma_q(shape + 1.0, z) -
           y * boost::math::gamma_q(shape, z);
  };
  return expectile_from_partial_moments(lower, upper, m, 0.0,
                                        std::numeric_limits<double>::infinity(),
                                        gamma);
}

double expectile_beta(double p, double q, Level gamma) {
  if (!(p > 0.0 && q > 0.0)) throw NumericDomainError("beta shapes must be > 0");
  const double m = p / (p + q);
  auto lower = [=](double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return y - m;
    return y * boost::math::ibeta(p, q, y) - m * boost::math::ibeta(p + 1.0, q, y);
  };
  auto upper = [=](double y) {
    if (y <= 0.0) return m - y;
    if (y >= 1.0) return 0.0;
    return m * boost::math::ibetac(p + 1.0, q, y) - y * boost::math::ibetac(p, q, y);
  };
  return expectile_from_partial_moments(lower, upper, m, 0.0, 1.0, gamma);
}

}  // namespace basisrisk
