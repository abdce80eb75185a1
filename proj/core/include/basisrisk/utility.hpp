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

#ifndef BASISRISK_UTILITY_HPP_
#define BASISRISK_UTILITY_HPP_

#include <functional>
#include <span>
#include <string>

namespace basisrisk {

// von Neumann-Morgenstern utility with first and second derivatives.
class Utility {
 public:
  using Fn = std::function<double(double)>;

  // u(x) = 1 - exp(-beta x).
  static Utility exponential(double beta);
  // u(x) = (x^(1 - eta) - 1) / (1 - eta) on x > 0.
  static Utility power(double eta);
  static Utility custom(Fn u, Fn du, Fn d2u, std::string name = "custom");

  // Power utilities throw NumericDomainError("utility domain violated")
  // for x <= 0.
  double u(double x) const { return u_(x); }
  double du(double x) const { return du_(x); }
  double d2u(double x) const { return d2u_(x); }

  const std::string& name() const noexcept { return name_; }
  // Risk aversion for the exponential family, zero otherwise.
  double beta() const noexcept { return beta_; }
  bool is_exponential() const noexcept { return name_ == "exponential"; }

 private:
  Utility(Fn u, Fn du, Fn d2u, std::string name, double beta)
      : u_(std::move(u)), du_(std::move(du)), d2u_(std::move(d2u)),
        name_(std::move(name)), beta_(beta) {}
  Fn u_, du_, d2u_;
  std::string name_;
  double beta_ = 0.0;
};

struct UtilityContext {
  Utility utility;
  double w0 = 0.0;
};

// Samples u' and u'' on [lo, hi] and throws NumericDomainError unless u is
// increasing and concave there.
void check_utility_support(const Utility& u, double lo, double hi,
                           int points = 33);

}  // namespace basisrisk

#endif  // BASISRISK_UTILITY_HPP_
