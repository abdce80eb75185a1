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

#include "basisrisk/contracts.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "basisrisk/errors.hpp"

namespace basisrisk {

std::string to_string(PayoutFamily f) {
  switch (f) {
    case PayoutFamily::PurePar: return "pure";
    case PayoutFamily::IndexPar: return "index";
    case PayoutFamily::PiecewiseLinear: return "piecewise_linear";
  }
  return "unknown";
}

std::string to_string(PremiumPrinciple p) {
  switch (p) {
    case PremiumPrinciple::ExpectedValue: return "expected_value";
    case PremiumPrinciple::StdDev: return "std_dev";
    case PremiumPrinciple::Variance: return "variance";
  }
  return "unknown";
}

PayoutFamily parse_payout_family(const std::string& s) {
  if (s == "pure") return PayoutFamily::PurePar;
  if (s == "index") return PayoutFamily::IndexPar;
  if (s == "piecewise_linear") return PayoutFamily::PiecewiseLinear;
  throw NumericDomainError("unknown payout family '" + s + "'");
}

PremiumPrinciple parse_premium_principle(const std::string& s) {
  if (s == "expected_value" || s == "E") return PremiumPrinciple::ExpectedValue;
  if (s == "std_dev" || s == "SD") return PremiumPrinciple::StdDev;
  if (s == "variance" || s == "V") return PremiumPrinciple::Variance;
  throw NumericDomainError("unknown premium principle '" + s + "'");
}

void ContractSpec::validate() const {
  if (!(rho > 0.0)) throw NumericDomainError("premium loading rho must be > 0");
  if (!(building_value > 0.0)) throw NumericDomainError("building value must be > 0");
  if (!(trigger.hi > trigger.lo)) throw NumericDomainError("empty trigger interval");
  if (family == PayoutFamily::PiecewiseLinear && !(cap > 0.0)) {
    throw NumericDomainError("piecewise-linear cap must be > 0");
  }
}

void LossIndexSample::validate() const {
  if (losses.size() != indices.size()) {
    throw NumericDomainError("losses and indices differ in length");
  }
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (!std::isfinite(losses[i]) || !std::isfinite(indices[i])) {
      throw NumericDomainError("non-finite loss or index value");
    }
    if (losses[i] < 0.0) throw NumericDomainError("negative loss");
  }
}

TriggerSplit split_by_trigger(const LossIndexSample& sample, const ContractSpec& spec) {
  sample.validate();
  if (sample.size() == 0) throw DegenerateDataError("empty sample");
  TriggerSplit out;
  out.mask.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const bool t = spec.trigger.contains(sample.indices[i]);
    out.mask[i] = t;
    auto& side = t ? out.triggered : out.untriggered;
    side.losses.push_back(sample.losses[i]);
    side.indices.push_back(sample.indices[i]);
  }
  if (out.triggered.size() == 0 || out.untriggered.size() == 0) {
    throw DegenerateDataError("degenerate trigger");
  }
  out.p_trigger = static_cast<double>(out.triggered.size()) /
                  static_cast<double>(sample.size());
  return out;
}

PayoutVector pure_parametric_payout(const LossIndexSample& sample,
                                    const ContractSpec& spec, Level gamma) {
  const TriggerSplit split = split_by_trigger(sample, spec);
  const double e = expectile(EmpiricalSample(split.triggered.losses), gamma);
  PayoutVector y;
  y.payments.resize(sample.size(), 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (split.mask[i]) y.payments[i] = e;
  }
  return y;
}

PayoutVector index_payout(const LossIndexSample& sample, const ContractSpec& spec,
                          Level gamma, const ConditionalModel& conditioner) {
  const TriggerSplit split = split_by_trigger(sample, spec);
  std::vector<double> e(split.triggered.size());
  conditioner.expectiles(split.triggered.indices, gamma, e);
  PayoutVector y;
  y.payments.resize(sample.size(), 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (split.mask[i]) y.payments[i] = e[k++];
  }
  return y;
}

PayoutVector piecewise_linear_payout(const LossIndexSample& sample,
                                     const ContractSpec& spec, double slope) {
  PayoutVector y;
  y.payments.resize(sample.size(), 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double th = sample.indices[i];
    if (!spec.trigger.contains(th)) continue;
    y.payments[i] = std::min(std::max(0.0, slope * (th - spec.attachment)), spec.cap);
  }
  return y;
}

double premium(std::span<const double> payments, PremiumPrinciple principle, double rho) {
  if (payments.empty()) return 0.0;
  const double n = static_cast<double>(payments.size());
  double mean = 0.0;
  for (double y : payments) mean += y;
  mean /= n;
  double var = 0.0;
  for (double y : payments) var += (y - mean) * (y - mean);
  var /= n;
  switch (principle) {
    case PremiumPrinciple::ExpectedValue: return (1.0 + rho) * mean;
    case PremiumPrinciple::StdDev: return mean + rho * std::sqrt(var);
    case PremiumPrinciple::Variance: return mean + rho * var;
  }
  return mean;
}

double premium(const PayoutVector& payout, const ContractSpec& spec) {
  return premium(payout.payments, spec.principle, spec.rho);
}

std::vector<double> basis_risk(std::span<const double> losses, const PayoutVector& payout) {
  if (losses.size() != payout.payments.size()) {
    throw NumericDomainError("losses and payout differ in length");
  }
  std::vector<double> b(losses.size());
  for (std::size_t i = 0; i < losses.size(); ++i) b[i] = payout.payments[i] - losses[i];
  return b;
}

double asymmetric_objective(std::span<const double> losses, const PayoutVector& payout,
                            BasisRiskWeight alpha) {
  if (losses.size() != payout.payments.size()) {
    throw NumericDomainError("losses and payout differ in length");
  }
  if (losses.empty()) return 0.0;
  const double a = alpha.value();
  double acc = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    const double d = losses[i] - payout.payments[i];
    const double w = d > 0.0 ? a : 1.0 - a;
    acc += w * w * d * d;
  }
  return acc / static_cast<double>(losses.size());
}

namespace {

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double rel_tol = 1e-10) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > rel_tol * (std::abs(a) + std::abs(b) + 1e-300); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

SlopeFit fit_piecewise_linear(const LossIndexSample& sample, const ContractSpec& spec,
                              const FitMode& mode) {
  sample.validate();
  spec.validate();
  double min_excess = std::numeric_limits<double>::infinity();
  double max_excess = 0.0;
  for (double th : sample.indices) {
    if (!spec.trigger.contains(th)) continue;
    const double x = th - spec.attachment;
    if (x > 0.0) {
      min_excess = std::min(min_excess, x);
      max_excess = std::max(max_excess, x);
    }
  }
  if (!(max_excess > 0.0)) {
    throw DegenerateDataError("no triggered index above the attachment point");
  }
  // Between these slopes the scheme moves from negligible payouts to every
  // triggered row paying the cap.
  const double hi = spec.cap / min_excess;
  const double lo = 1e-3 * spec.cap / max_excess;

  std::function<double(double)> objective;
  if (const auto* m = std::get_if<BasisRiskOptimal>(&mode)) {
    const double g = m->gamma_star.value();
    objective = [&sample, &spec, g](double slope) {
      const PayoutVector y = piecewise_linear_payout(sample, spec, slope);
      double acc = 0.0;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        const double d = sample.losses[i] - y.payments[i];
        acc += (d > 0.0 ? g : 1.0 - g) * d * d;
      }
      return acc / static_cast<double>(sample.size());
    };
  } else {
    const auto& ctx = std::get<PureUtility>(mode).utility;
    objective = [&sample, &spec, &ctx](double slope) {
      const PayoutVector y = piecewise_linear_payout(sample, spec, slope);
      const double pi = premium(y, spec);
      double acc = 0.0;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        acc += ctx.utility.u(ctx.w0 - sample.losses[i] + y.payments[i] - pi);
      }
      return -acc / static_cast<double>(sample.size());
    };
  }
  auto in_log = [&](double t) { return objective(std::exp(t)); };

  constexpr int kScan = 64;
  const double tlo = std::log(lo), thi = std::log(hi);
  std::vector<double> ts(kScan), fs(kScan);
  for (int i = 0; i < kScan; ++i) {
    ts[i] = tlo + (thi - tlo) * i / (kScan - 1);
    fs[i] = in_log(ts[i]);
  }
  const auto best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  int local_minima = 0;
  const double noise = 1e-12 * (std::abs(fs[best]) + 1e-300);
  for (int i = 0; i < kScan; ++i) {
    const bool left = i == 0 || fs[i] < fs[i - 1] - noise;
    const bool right = i == kScan - 1 || fs[i] < fs[i + 1] - noise;
    if (left && right) ++local_minima;
  }

  SlopeFit fit;
  if (local_minima > 1) {
    fit.grid_fallback = true;
    fit.warnings.push_back("slope profile is not unimodal; used dense grid scan");
    constexpr int kDense = 4096;
    double bt = ts[best], bf = fs[best];
    for (int i = 0; i < kDense; ++i) {
      const double t = tlo + (thi - tlo) * i / (kDense - 1);
      const double f = in_log(t);
      if (f < bf) {
        bf = f;
        bt = t;
      }
    }
    fit.slope = std::exp(bt);
    fit.objective = bf;
  } else {
    const double a = ts[std::max(best - 1, 0)];
    const double b = ts[std::min(best + 1, kScan - 1)];
    const double t = golden_min(in_log, a, b);
    fit.slope = std::exp(t);
    fit.objective = in_log(t);
    if (fs[best] < fit.objective) {
      fit.slope = std::exp(ts[best]);
      fit.objective = fs[best];
    }
  }
  if (best == 0 || best == kScan - 1) {
    fit.at_boundary = true;
    fit.warnings.push_back("optimal slope at the edge of the search range");
  }
  return fit;
}

}  // namespace basisrisk
