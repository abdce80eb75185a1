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

#include "basisrisk/utility.hpp"

#include <cmath>
#include <utility>

#include "basisrisk/errors.hpp"

namespace basisrisk {

Utility Utility::exponential(double beta) {
  if (!(beta > 0.0)) throw NumericDomainError("exponential utility needs beta > 0");
  return Utility([beta](double x) { return 1.0 - std::exp(-beta * x); },
                 [beta](double x) { return beta * std::exp(-beta * x); },
                 [beta](double x) { return -beta * beta * std::exp(-beta * x); },
                 "exponential", beta);
}

Utility Utility::power(double eta) {
  if (!(eta > 0.0) || eta == 1.0) {
    throw NumericDomainError("power utility needs eta > 0 and eta != 1");
  }
  auto guard = [](double x) {
    if (!(x > 0.0)) throw NumericDomainError("utility domain violated");
  };
  return Utility(
      [eta, guard](double x) {
        guard(x);
        return (std::pow(x, 1.0 - eta) - 1.0) / (1.0 - eta);
      },
      [eta, guard](double x) {
        guard(x);
        return std::pow(x, -eta);
      },
      [eta, guard](double x) {
        guard(x);
        return -eta * std::pow(x, -eta - 1.0);
      },
      "power", 0.0);
}

Utility Utility::custom(Fn u, Fn du, Fn d2u, std::string name) {
  if (!u || !du || !d2u) throw NumericDomainError("custom utility needs u, u', u''");
  if (name == "exponential") name = "custom";
  return Utility(std::move(u), std::move(du), std::move(d2u), std::move(name), 0.0);
}

void check_utility_support(const Utility& u, double lo, double hi, int points) {
  if (!(hi >= lo)) std::swap(lo, hi);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.5 : static_cast<double>(i) / (points - 1);
    const double x = lo + t * (hi - lo);
    if (!(u.du(x) > 0.0) || !(u.d2u(x) <= 0.0)) {
      throw NumericDomainError("utility is not increasing and concave on the wealth support");
    }
  }
}

}  // namespace basisrisk
