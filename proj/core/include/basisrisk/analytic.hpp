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

#ifndef BASISRISK_ANALYTIC_HPP_
#define BASISRISK_ANALYTIC_HPP_

#include <functional>

#include "basisrisk/expectile.hpp"

namespace basisrisk {

// Principal branch of the Lambert W function, W(x) e^W(x) = x for
// x >= -1/e. Halley iteration from a branch-point series, a Pade-style
// guess near zero or the asymptotic log expansion for large x.
double lambert_w0(double x);

// Expectile of the exponential law with the given mean:
// mean * (1 + W((2 gamma - 1) / (1 - gamma) / e)).
double expectile_exponential(double mean, Level gamma);

// Expectile of a continuous law from its partial moments
// lower(y) = E[(y - X)+] and upper(y) = E[(X - y)+], bracketed on
// [lo, hi]. hi may be +inf, in which case the bracket is grown from mean.
double expectile_from_partial_moments(
    const std::function<double(double)>& lower,
    const std::function<double(double)>& upper, double mean, double lo,
    double hi, Level gamma);

// Gamma law with shape r and scale s (mean r s).
double expectile_gamma(double shape, double scale, Level gamma);
// Beta(p, q) law on [0, 1].
double expectile_beta(double p, double q, Level gamma);

}  // namespace basisrisk

#endif  // BASISRISK_ANALYTIC_HPP_
