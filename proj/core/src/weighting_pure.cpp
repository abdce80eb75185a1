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

#include "basisrisk/weighting_pure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "basisrisk/errors.hpp"

namespace basisrisk {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::InteriorOptimum: return "interior_optimum";
    case Decision::PreferNoInsurance: return "prefer_no_insurance";
    case Decision::PreferSmallestAlpha: return "prefer_smallest_alpha";
    case Decision::PreferIndemnity: return "prefer_indemnity";
    case Decision::PreferLargestAlpha: return "prefer_largest_alpha";
    case Decision::EndpointLow: return "endpoint_low";
    case Decision::EndpointHigh: return "endpoint_high";
  }
  return "unknown";
}

std::vector<double> default_trace_grid() {
  std::vector<double> g(99);
  for (int i = 0; i < 99; ++i) g[i] = 0.01 * (i + 1);
  return g;
}

PureProblem::PureProblem(const LossIndexSample& sample, const ContractSpec& spec,
                         UtilityContext utility)
    : split_(split_by_trigger(sample, spec)),
      spec_(spec),
      utility_(std::move(utility)),
      triggered_(split_.triggered.losses),
      n_(sample.size()) {
  spec_.validate();
  const double pt = split_.p_trigger;
  switch (spec_.principle) {
    case PremiumPrinciple::ExpectedValue:
      c_ = (1.0 + spec_.rho) * pt;
      break;
    case PremiumPrinciple::StdDev:
      c_ = pt + spec_.rho * std::sqrt(pt * (1.0 - pt));
      break;
    case PremiumPrinciple::Variance:
      c_ = 0.0;
      break;
  }
  if (spec_.principle != PremiumPrinciple::Variance && c_ >= 1.0) {
    throw NumericDomainError("premium dominates payout");
  }
  // Power utilities guard their own domain; custom ones are sampled over the
  // wealth reachable between the extreme payouts.
  const auto& u = utility_.utility;
  if (!u.is_exponential() && u.name() != "power") {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double e : {triggered_.min(), triggered_.max()}) {
      const double pi = premium_for(e);
      for (double s : split_.triggered.losses) {
        lo = std::min(lo, utility_.w0 - s + e - pi);
        hi = std::max(hi, utility_.w0 - s + e - pi);
      }
      for (double s : split_.untriggered.losses) {
        lo = std::min(lo, utility_.w0 - s - pi);
        hi = std::max(hi, utility_.w0 - s - pi);
      }
    }
    check_utility_support(u, lo, hi);
  }
}

std::pair<double, double> PureProblem::v_at(double e) const {
  const auto& u = utility_.utility;
  const double w0 = utility_.w0;
  const auto& st = split_.triggered.losses;
  const auto& sn = split_.untriggered.losses;
  double a = 0.0, b = 0.0;
  double f1, f2, shift1, shift2;
  if (spec_.principle == PremiumPrinciple::Variance) {
    const double pt = split_.p_trigger;
    const double big_r = pt * (1.0 + spec_.rho * (1.0 - pt) * e);
    const double small_r = pt * (1.0 + 2.0 * spec_.rho * (1.0 - pt) * e);
    f1 = 1.0 - small_r;
    f2 = small_r;
    shift1 = (1.0 - big_r) * e;
    shift2 = -big_r * e;
  } else {
    f1 = 1.0 - c_;
    f2 = c_;
    shift1 = (1.0 - c_) * e;
    shift2 = -c_ * e;
  }
  for (double s : st) a += u.du(w0 - s + shift1);
  for (double s : sn) b += u.du(w0 - s + shift2);
  const double n = static_cast<double>(n_);
  return {f1 * a / n, f2 * b / n};
}

double PureProblem::bound_lhs(double k) const {
  const auto& u = utility_.utility;
  const double w0 = utility_.w0;
  const auto& st = split_.triggered.losses;
  const auto& sn = split_.untriggered.losses;
  double a = 0.0, b = 0.0;
  double scale = 1.0, shift1, shift2;
  if (spec_.principle == PremiumPrinciple::Variance) {
    const double pt = split_.p_trigger;
    const double big_r = pt * (1.0 + spec_.rho * (1.0 - pt) * k);
    scale = 1.0 / (pt * (1.0 + 2.0 * spec_.rho * (1.0 - pt) * k)) - 1.0;
    shift1 = (1.0 - big_r) * k;
    shift2 = -big_r * k;
  } else {
    shift1 = (1.0 - c_) * k;
    shift2 = -c_ * k;
  }
  for (double s : st) a += u.du(w0 - s + shift1);
  for (double s : sn) b += u.du(w0 - s + shift2);
  return scale * (a / static_cast<double>(st.size())) / (b / static_cast<double>(sn.size()));
}

double PureProblem::threshold() const {
  const double pt = split_.p_trigger;
  if (spec_.principle == PremiumPrinciple::Variance) return (1.0 - pt) / pt;
  return (1.0 - pt) * c_ / (pt * (1.0 - c_));
}

double PureProblem::premium_for(double e) const {
  const double pt = split_.p_trigger;
  switch (spec_.principle) {
    case PremiumPrinciple::ExpectedValue: return (1.0 + spec_.rho) * pt * e;
    case PremiumPrinciple::StdDev: return (pt + spec_.rho * std::sqrt(pt * (1.0 - pt))) * e;
    case PremiumPrinciple::Variance: return pt * e + spec_.rho * pt * (1.0 - pt) * e * e;
  }
  return pt * e;
}

double PureProblem::utility_at(double e) const {
  const auto& u = utility_.utility;
  const double w0 = utility_.w0;
  const double pi = premium_for(e);
  double acc = 0.0;
  for (double s : split_.triggered.losses) acc += u.u(w0 - s + e - pi);
  for (double s : split_.untriggered.losses) acc += u.u(w0 - s - pi);
  return acc / static_cast<double>(n_);
}

double PureProblem::utility_no_insurance() const {
  const auto& u = utility_.utility;
  double acc = 0.0;
  for (double s : split_.triggered.losses) acc += u.u(utility_.w0 - s);
  for (double s : split_.untriggered.losses) acc += u.u(utility_.w0 - s);
  return acc / static_cast<double>(n_);
}

std::pair<double, double> v1_v2(const PureProblem& problem, Level gamma) {
  return problem.v_at(expectile(problem.triggered(), gamma));
}

namespace {

std::pair<double, double> level_range(const PureProblem& p, const SolveOptions& o) {
  if (p.triggered().is_constant()) throw DegenerateDataError("degenerate distribution");
  if (o.restrict) {
    return {expectile(p.triggered(), Level(o.restrict->first)),
            expectile(p.triggered(), Level(o.restrict->second))};
  }
  return {p.triggered().min(), p.triggered().max()};
}

double gap(const PureProblem& p, double k) {
  const auto [v1, v2] = p.v_at(k);
  return v1 - v2;
}

void check_trace(const std::vector<TracePoint>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const auto& a = trace[i - 1];
    const auto& b = trace[i];
    const double slack1 = 1e-12 * std::max(std::abs(a.v1), std::abs(b.v1));
    const double slack2 = 1e-12 * std::max(std::abs(a.v2), std::abs(b.v2));
    if (b.v1 > a.v1 + slack1 || b.v2 < a.v2 - slack2) {
      throw MonotonicityError("monotonicity violated");
    }
  }
}

}  // namespace

BoundCheck check_bounds(const PureProblem& problem, const SolveOptions& options) {
  const auto [klo, khi] = level_range(problem, options);
  BoundCheck bc;
  bc.threshold = problem.threshold();
  bc.lower_k = klo;
  bc.lower_lhs = problem.bound_lhs(klo);
  bc.lower_holds = gap(problem, klo) > 0.0;

  // Candidate k values crowd toward the upper end, then the limit itself.
  const int n = std::max(options.scan_points, 2);
  std::vector<double> ks;
  for (int j = 1; j < n; ++j) {
    const double frac = std::exp(std::log(1e-9) * j / (n - 1));
    ks.push_back(khi - (khi - klo) * frac);
  }
  ks.push_back(khi);
  bc.upper_holds = false;
  bc.upper_k = khi;
  for (double k : ks) {
    if (gap(problem, k) < 0.0) {
      bc.upper_holds = true;
      bc.upper_k = k;
      break;
    }
  }
  bc.upper_lhs = problem.bound_lhs(bc.upper_k);
  return bc;
}

Decision violated_boundary_decision(const PureProblem& problem, const BoundCheck& bounds,
                                    double indemnity_loading, WeightingSolution* diag) {
  if (!bounds.lower_holds && !bounds.upper_holds) {
    throw MonotonicityError("both boundary conditions violated");
  }
  const auto& spec = problem.spec();
  const auto& u = problem.utility().utility;
  const double w0 = problem.utility().w0;
  if (!bounds.lower_holds) {
    double a = 0.0, b = 0.0;
    for (double s : problem.split().triggered.losses) a += u.du(w0 - s);
    for (double s : problem.split().untriggered.losses) b += u.du(w0 - s);
    const double v0 = (a / static_cast<double>(problem.split().triggered.size())) /
                      (b / static_cast<double>(problem.split().untriggered.size()));
    const double cut = spec.principle == PremiumPrinciple::Variance ? 1.0 : problem.threshold();
    const double u0 = problem.utility_no_insurance();
    if (diag) {
      diag->v0 = v0;
      diag->utility_no_insurance = u0;
    }
    if (v0 <= cut) return Decision::PreferNoInsurance;
    const double ulim = problem.utility_at(problem.triggered().min());
    if (diag) diag->utility_limit = ulim;
    return ulim > u0 ? Decision::PreferSmallestAlpha : Decision::PreferNoInsurance;
  }

  // Upper bound violated: compare against full indemnity cover.
  const auto& losses_t = problem.split().triggered.losses;
  const auto& losses_n = problem.split().untriggered.losses;
  const double n = static_cast<double>(problem.n());
  double mean = 0.0;
  for (double s : losses_t) mean += s;
  for (double s : losses_n) mean += s;
  mean /= n;
  double var = 0.0;
  for (double s : losses_t) var += (s - mean) * (s - mean);
  for (double s : losses_n) var += (s - mean) * (s - mean);
  var /= n;
  const double pt = problem.p_trigger();
  const double ess_sup = problem.triggered().max();
  const double ratio = indemnity_loading / spec.rho;
  bool indemnity = false;
  switch (spec.principle) {
    case PremiumPrinciple::ExpectedValue:
      indemnity = ess_sup > ratio * mean / pt;
      break;
    case PremiumPrinciple::StdDev:
      indemnity = ess_sup * ess_sup > ratio * ratio * var / (pt * (1.0 - pt));
      break;
    case PremiumPrinciple::Variance:
      indemnity = ess_sup * ess_sup > ratio * var / (pt * (1.0 - pt));
      break;
  }
  return indemnity ? Decision::PreferIndemnity : Decision::PreferLargestAlpha;
}

WeightingSolution solve_gamma_star(const PureProblem& problem, const SolveOptions& options) {
  WeightingSolution sol;
  std::vector<double> grid = options.trace_grid.empty() ? default_trace_grid() : options.trace_grid;
  if (options.restrict) {
    const auto [lo, hi] = *options.restrict;
    if (!(lo < hi)) throw NumericDomainError("restricted level interval is empty");
    std::erase_if(grid, [lo, hi](double g) { return g < lo || g > hi; });
  }
  for (double g : grid) {
    const auto [v1, v2] = v1_v2(problem, Level(g));
    sol.trace.push_back({g, v1, v2});
  }
  if (options.check_monotone) check_trace(sol.trace);

  sol.bounds = check_bounds(problem, options);
  sol.lower_bound_holds = sol.bounds.lower_holds;
  sol.upper_bound_holds = sol.bounds.upper_holds;

  if (sol.lower_bound_holds && sol.upper_bound_holds) {
    auto [lo, hi] = level_range(problem, options);
    for (int it = 0; it < 300; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (gap(problem, mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double k = 0.5 * (lo + hi);
    const auto [v1, v2] = problem.v_at(k);
    sol.k_star = k;
    sol.residual = std::abs(v1 - v2);
    if (sol.residual > options.residual_tol * (std::abs(v1) + std::abs(v2))) {
      sol.notes.push_back("critical-point residual above tolerance at machine-precision bracket");
    }
    const double g = expectile_level(problem.triggered(), k);
    sol.gamma_star = g;
    sol.alpha_star = alpha_from_gamma(Level(g)).value();
    sol.decision = Decision::InteriorOptimum;
    return sol;
  }
  if (options.restrict) {
    const double g = sol.lower_bound_holds ? options.restrict->second : options.restrict->first;
    sol.decision = sol.lower_bound_holds ? Decision::EndpointHigh : Decision::EndpointLow;
    sol.gamma_star = g;
    sol.alpha_star = alpha_from_gamma(Level(g)).value();
    sol.k_star = expectile(problem.triggered(), Level(g));
    return sol;
  }
  sol.decision = violated_boundary_decision(
      problem, sol.bounds, options.indemnity_loading.value_or(problem.spec().rho), &sol);
  return sol;
}

ClosedForm closed_form_exponential(const PureProblem& problem) {
  const auto& u = problem.utility().utility;
  if (!u.is_exponential()) throw NumericDomainError("closed form needs exponential utility");
  if (problem.spec().principle != PremiumPrinciple::ExpectedValue) {
    throw NumericDomainError("closed form needs the expected value principle");
  }
  const double beta = u.beta();
  const double c = (1.0 + problem.spec().rho) * problem.p_trigger();
  auto log_sum_exp = [beta](const std::vector<double>& s) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : s) m = std::max(m, beta * x);
    double acc = 0.0;
    for (double x : s) acc += std::exp(beta * x - m);
    return m + std::log(acc);
  };
  const double x = -(std::log(c / (1.0 - c)) + log_sum_exp(problem.split().untriggered.losses) -
                     log_sum_exp(problem.split().triggered.losses)) /
                   beta;
  const auto& t = problem.triggered();
  if (t.is_constant() || !(x > t.min() && x < t.max())) {
    throw NumericDomainError("bounds violated");
  }
  const double g = expectile_level(t, x);
  return {alpha_from_gamma(Level(g)).value(), g, x};
}

std::vector<UtilityPoint> utility_curve(const LossIndexSample& sample, const ContractSpec& spec,
                                        const UtilityContext& utility,
                                        const std::vector<double>& gamma_grid,
                                        const ConditionalModel* conditioner) {
  const TriggerSplit split = split_by_trigger(sample, spec);
  const bool index = spec.family == PayoutFamily::IndexPar;
  if (index && conditioner == nullptr) {
    throw NumericDomainError("index payout requires a conditional model");
  }
  const EmpiricalSample triggered(split.triggered.losses);
  const auto& u = utility.utility;
  const double n = static_cast<double>(sample.size());
  std::vector<UtilityPoint> out;
  out.reserve(gamma_grid.size());
  std::vector<double> pay(split.triggered.size());
  std::vector<double> full(sample.size(), 0.0);
  for (double g : gamma_grid) {
    const Level level(g);
    if (index) {
      conditioner->expectiles(split.triggered.indices, level, pay);
    } else {
      std::fill(pay.begin(), pay.end(), expectile(triggered, level));
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) full[i] = split.mask[i] ? pay[k++] : 0.0;
    const double pi = premium(full, spec.principle, spec.rho);
    double u1 = 0.0, u2 = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const double x = u.u(utility.w0 - sample.losses[i] + full[i] - pi);
      (split.mask[i] ? u1 : u2) += x;
    }
    out.push_back({g, u1 / n, u2 / n, (u1 + u2) / n});
  }
  return out;
}

}  // namespace basisrisk
