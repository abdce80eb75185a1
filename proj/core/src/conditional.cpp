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

#include "basisrisk/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "basisrisk/analytic.hpp"
#include "basisrisk/errors.hpp"

namespace basisrisk {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void ConditionalModel::expectiles(std::span<const double> thetas, Level gamma,
                                  std::span<double> out) const {
  for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = expectile(thetas[i], gamma);
}

std::vector<double> ConditionalModel::knots(std::span<const double> triggered) const {
  if (triggered.empty()) throw DegenerateDataError("no triggered index values");
  std::vector<double> v(triggered.begin(), triggered.end());
  std::sort(v.begin(), v.end());
  constexpr int kKnots = 20;
  std::vector<double> out;
  for (int i = 0; i < kKnots; ++i) {
    const double pos = (i + 0.5) / kKnots * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double t = pos - static_cast<double>(lo);
    const double q = v[lo] + t * (v[hi] - v[lo]);
    if (out.empty() || q > out.back()) out.push_back(q);
  }
  return out;
}

ExponentialConditional::ExponentialConditional(std::function<double(double)> mean)
    : mean_(std::move(mean)) {}

double ExponentialConditional::expectile(double theta, Level gamma) const {
  return expectile_exponential(mean_(theta), gamma);
}

double ExponentialConditional::ess_sup(double) const { return kInf; }

void ExponentialConditional::expectiles(std::span<const double> thetas, Level gamma,
                                        std::span<double> out) const {
  const double unit = expectile_exponential(1.0, gamma);
  for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = mean_(thetas[i]) * unit;
}

GammaConditional::GammaConditional(std::function<double(double)> shape,
                                   std::function<double(double)> scale)
    : shape_(std::move(shape)), scale_(std::move(scale)) {}

double GammaConditional::expectile(double theta, Level gamma) const {
  return expectile_gamma(shape_(theta), scale_(theta), gamma);
}

double GammaConditional::ess_sup(double) const { return kInf; }

void GammaConditional::expectiles(std::span<const double> thetas, Level gamma,
                                  std::span<double> out) const {
  // Expectiles scale with the scale parameter, so one root solve per
  // distinct shape is enough.
  std::vector<std::pair<double, double>> unit;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double shape = shape_(thetas[i]);
    auto it = std::find_if(unit.begin(), unit.end(),
                           [shape](const auto& e) { return e.first == shape; });
    if (it == unit.end()) {
      if (unit.size() >= 64) {
        out[i] = expectile_gamma(shape, scale_(thetas[i]), gamma);
        continue;
      }
      unit.emplace_back(shape, expectile_gamma(shape, 1.0, gamma));
      it = unit.end() - 1;
    }
    out[i] = it->second * scale_(thetas[i]);
  }
}

LocationScaleConditional::LocationScaleConditional(
    std::function<double(double)> location, std::function<double(double)> scale,
    ErrorLaw error)
    : location_(std::move(location)), scale_(std::move(scale)), error_(std::move(error)) {}

double LocationScaleConditional::expectile(double theta, Level gamma) const {
  return location_(theta) + scale_(theta) * error_.expectile(gamma);
}

double LocationScaleConditional::ess_inf(double theta) const {
  const double s = scale_(theta);
  return s == 0.0 ? location_(theta) : location_(theta) + s * error_.inf;
}

double LocationScaleConditional::ess_sup(double theta) const {
  const double s = scale_(theta);
  return s == 0.0 ? location_(theta) : location_(theta) + s * error_.sup;
}

void LocationScaleConditional::expectiles(std::span<const double> thetas, Level gamma,
                                          std::span<double> out) const {
  const double z = error_.expectile(gamma);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    out[i] = location_(thetas[i]) + scale_(thetas[i]) * z;
  }
}

PooledConditional::PooledConditional(EmpiricalSample losses) : losses_(std::move(losses)) {}

double PooledConditional::expectile(double, Level gamma) const {
  return basisrisk::expectile(losses_, gamma);
}

void PooledConditional::expectiles(std::span<const double> thetas, Level gamma,
                                   std::span<double> out) const {
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(thetas.size()),
            basisrisk::expectile(losses_, gamma));
}

BinnedEmpiricalConditional::BinnedEmpiricalConditional(std::span<const double> indices,
                                                       std::span<const double> losses,
                                                       std::size_t min_bin_count,
                                                       std::size_t max_bins) {
  if (indices.size() != losses.size()) {
    throw NumericDomainError("indices and losses differ in length");
  }
  const std::size_t n = indices.size();
  if (min_bin_count == 0) min_bin_count = 1;
  const std::size_t nbins = std::min(max_bins, n / min_bin_count);
  if (nbins == 0) throw DegenerateDataError("insufficient conditional data");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
  for (std::size_t b = 0; b < nbins; ++b) {
    const std::size_t lo = b * n / nbins;
    const std::size_t hi = (b + 1) * n / nbins;
    std::vector<double> s;
    s.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) s.push_back(losses[order[k]]);
    samples_.emplace_back(s);
    upper_edges_.push_back(indices[order[hi - 1]]);
    centers_.push_back(indices[order[(lo + hi - 1) / 2]]);
  }
}

std::size_t BinnedEmpiricalConditional::bin_of(double theta) const {
  const auto it = std::lower_bound(upper_edges_.begin(), upper_edges_.end(), theta);
  const auto b = static_cast<std::size_t>(it - upper_edges_.begin());
  return std::min(b, samples_.size() - 1);
}

double BinnedEmpiricalConditional::expectile(double theta, Level gamma) const {
  return basisrisk::expectile(samples_[bin_of(theta)], gamma);
}

double BinnedEmpiricalConditional::ess_inf(double theta) const {
  return samples_[bin_of(theta)].min();
}

double BinnedEmpiricalConditional::ess_sup(double theta) const {
  return samples_[bin_of(theta)].max();
}

std::vector<double> BinnedEmpiricalConditional::knots(std::span<const double>) const {
  return centers_;
}

}  // namespace basisrisk
