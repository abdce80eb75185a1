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

#include "basisrisk/weighting_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "basisrisk/errors.hpp"

namespace basisrisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSecondLevel = 0.9;

std::size_t half_column(std::span<const double> grid) {
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] == 0.5) return j;
  }
  throw NumericDomainError("level grid must contain 1/2");
}

}  // namespace

std::vector<double> separability_grid(int points, double logit_span) {
  if (points < 3) throw NumericDomainError("level grid needs at least 3 points");
  std::vector<double> g;
  g.reserve(points + 1);
  for (int i = 0; i < points; ++i) {
    const double z = -logit_span + 2.0 * logit_span * i / (points - 1);
    g.push_back(1.0 / (1.0 + std::exp(-z)));
  }
  if (std::find(g.begin(), g.end(), 0.5) == g.end()) g.push_back(0.5);
  std::sort(g.begin(), g.end());
  return g;
}

Eigen::MatrixXd expectile_surface(const ConditionalModel& model, std::span<const double> knots,
                                  std::span<const double> gamma_grid) {
  Eigen::MatrixXd s(knots.size(), gamma_grid.size());
  std::vector<double> col(knots.size());
  for (std::size_t j = 0; j < gamma_grid.size(); ++j) {
    model.expectiles(knots, Level(gamma_grid[j]), col);
    for (std::size_t i = 0; i < knots.size(); ++i) s(i, j) = col[i];
  }
  return s;
}

SeparableDecomposition decompose(const Eigen::MatrixXd& surface, std::span<const double> knots,
                                 std::span<const double> gamma_grid,
                                 const DecomposeOptions& options) {
  const auto rows = static_cast<std::size_t>(surface.rows());
  const auto cols = static_cast<std::size_t>(surface.cols());
  if (rows < 2 || cols < 3 || rows != knots.size() || cols != gamma_grid.size()) {
    throw NumericDomainError("surface needs at least 2 knots and 3 levels");
  }
  const std::size_t mid = half_column(gamma_grid);

  SeparableDecomposition d;
  d.knots.assign(knots.begin(), knots.end());
  d.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
  Eigen::MatrixXd centred = surface;
  d.H3.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    d.H3[i] = surface(i, mid);
    centred.row(i).array() -= d.H3[i];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double sigma = svd.singularValues()(0);
  Eigen::VectorXd u = svd.matrixU().col(0);
  Eigen::VectorXd v = svd.matrixV().col(0);
  if (!(sigma > 0.0)) throw SeparabilityError("flat expectile surface", kInf, {});

  // Reference knot: the median, unless its loading is negligible.
  std::size_t ref = rows / 2;
  Eigen::Index arg = 0;
  const double umax = u.cwiseAbs().maxCoeff(&arg);
  if (std::abs(u(ref)) < 1e-8 * umax) ref = static_cast<std::size_t>(arg);
  d.ref_index = ref;
  const double scale = u(ref);
  d.h1.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) d.h1[i] = u(i) / scale;
  d.H2.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) d.H2[j] = sigma * v(j) * scale;

  // Residual of the rank-1 fit, relative to each row's largest entry.
  d.residual_map.assign(rows, std::vector<double>(cols, 0.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double row_max = centred.row(i).cwiseAbs().maxCoeff();
    if (row_max == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = centred(i, j);
      const double r = c - d.h1[i] * d.H2[j];
      d.residual_map[i][j] = r / row_max;
      if (std::abs(c) >= options.mask_fraction * row_max) {
        worst = std::max(worst, std::abs(r) / std::abs(c));
      }
    }
  }
  d.residual = worst;

  if (options.throw_on_violation) {
    if (worst > options.tolerance) {
      throw SeparabilityError("separability violated", worst, d.residual_map);
    }
    for (double h : d.h1) {
      if (!(h > 0.0)) throw SeparabilityError("non-positive scale loading", worst, d.residual_map);
    }
    for (std::size_t j = 1; j < cols; ++j) {
      if (!(d.H2[j] > d.H2[j - 1])) {
        throw SeparabilityError("level loading not increasing", worst, d.residual_map);
      }
    }
  }
  return d;
}

SeparableIndexModel::SeparableIndexModel(const ConditionalModel& model,
                                         std::span<const double> triggered_indices,
                                         const DecomposeOptions& options,
                                         std::vector<double> gamma_grid)
    : model_(model) {
  const std::vector<double> knots = model.knots(triggered_indices);
  if (knots.size() < 2) throw DegenerateDataError("index has fewer than 2 distinct knots");
  decomp_ = decompose(expectile_surface(model, knots, gamma_grid), knots, gamma_grid, options);
  for (double h : decomp_.h1) h1_norm_sq_ += h * h;

  std::vector<double> lo(knots.size()), hi(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    lo[i] = model.ess_inf(knots[i]);
    hi[i] = model.ess_sup(knots[i]);
    if (!std::isfinite(hi[i])) unbounded_ = true;
  }
  h2_0_ = project(lo);
  h2_1_ = unbounded_ ? kInf : project(hi);
  h2_ref_level_ = H2(Level(kSecondLevel));
}

double SeparableIndexModel::project(std::span<const double> values) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += decomp_.h1[i] * (values[i] - decomp_.H3[i]);
  }
  return acc / h1_norm_sq_;
}

double SeparableIndexModel::H2(Level gamma) const {
  std::vector<double> e(decomp_.knots.size());
  model_.expectiles(decomp_.knots, gamma, e);
  return project(e);
}

double SeparableIndexModel::H2_inverse(double k) const {
  if (!(k > h2_0_ && k < h2_1_)) throw NumericDomainError("level loading out of range");
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 1100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (H2(Level(mid)) < k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double g = 0.5 * (lo + hi);
  if (g <= 0.0) return std::nextafter(0.0, 1.0);
  if (g >= 1.0) return std::nextafter(1.0, 0.0);
  return g;
}

void SeparableIndexModel::row_terms(std::span<const double> thetas, std::span<double> h1,
                                    std::span<double> H3) const {
  std::vector<double> upper(thetas.size());
  model_.expectiles(thetas, Level(0.5), H3);
  model_.expectiles(thetas, Level(kSecondLevel), upper);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    h1[i] = (upper[i] - H3[i]) / h2_ref_level_;
    if (!(h1[i] > 0.0)) {
      throw SeparabilityError("non-positive scale loading", decomp_.residual,
                              decomp_.residual_map);
    }
  }
}

IndexQuantities index_quantities(const SeparableIndexModel& model, const TriggerSplit& split,
                                 const ContractSpec& spec) {
  IndexQuantities q;
  const auto& th = split.triggered.indices;
  const std::size_t nt = th.size();
  const double n = static_cast<double>(nt + split.untriggered.size());
  q.h1.resize(nt);
  q.H3.resize(nt);
  model.row_terms(th, q.h1, q.H3);
  double s1 = 0.0, s3 = 0.0, s11 = 0.0, s33 = 0.0, s13 = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    s1 += q.h1[i];
    s3 += q.H3[i];
    s11 += q.h1[i] * q.h1[i];
    s33 += q.H3[i] * q.H3[i];
    s13 += q.h1[i] * q.H3[i];
  }
  q.m1 = s1 / n;
  q.m3 = s3 / n;
  q.V1 = std::max(0.0, s11 / n - q.m1 * q.m1);
  q.V3 = std::max(0.0, s33 / n - q.m3 * q.m3);
  q.V13 = s13 / n - q.m1 * q.m3;
  // Keep the covariance inside the Cauchy-Schwarz bound after rounding.
  const double cs = std::sqrt(q.V1 * q.V3);
  q.V13 = std::clamp(q.V13, -cs, cs);
  q.rho = spec.rho;
  q.p_trigger = split.p_trigger;
  q.delta1.resize(nt);
  q.delta3.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    q.delta1[i] = q.h1[i] - (1.0 + spec.rho) * q.m1;
    q.delta3[i] = q.H3[i] - (1.0 + spec.rho) * q.m3;
  }
  q.bE = (1.0 + spec.rho) * (1.0 - q.p_trigger) / q.p_trigger * q.m1;
  return q;
}

IndexProblem::IndexProblem(const LossIndexSample& sample, const ContractSpec& spec,
                           UtilityContext utility, const SeparableIndexModel& model)
    : split_(split_by_trigger(sample, spec)),
      spec_(spec),
      utility_(std::move(utility)),
      model_(model),
      n_(sample.size()) {
  spec_.validate();
  if (spec_.principle == PremiumPrinciple::StdDev) {
    throw NumericDomainError("unsupported premium principle for index insurance");
  }
  q_ = index_quantities(model_, split_, spec_);
  const auto& u = utility_.utility;
  if (!u.is_exponential() && u.name() != "power") {
    const double k_hi = model_.H2_1_unbounded() ? model_.decomposition().H2.back() : model_.H2_1();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double k : {model_.H2_0(), k_hi}) {
      const double pi = premium_at(k);
      const auto& st = split_.triggered.losses;
      for (std::size_t i = 0; i < st.size(); ++i) {
        const double w = utility_.w0 - st[i] + q_.h1[i] * k + q_.H3[i] - pi;
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      for (double s : split_.untriggered.losses) {
        lo = std::min(lo, utility_.w0 - s - pi);
        hi = std::max(hi, utility_.w0 - s - pi);
      }
    }
    check_utility_support(u, lo, hi);
  }
}

double IndexProblem::premium_at(double k) const {
  if (spec_.principle == PremiumPrinciple::Variance) return q_.premium_variance(k);
  return (1.0 + spec_.rho) * (q_.m1 * k + q_.m3);
}

namespace {

// Sums of the triggered and untriggered marginal-utility terms at H2 = k,
// before the 1/n scaling.
struct Terms {
  double trig = 0.0;
  double untrig = 0.0;
  double factor = 0.0;  // multiplies the untriggered sum
};

Terms terms_at(const IndexProblem& p, double k) {
  const auto& q = p.quantities();
  const auto& u = p.utility().utility;
  const double w0 = p.utility().w0;
  const auto& st = p.split().triggered.losses;
  const auto& sn = p.split().untriggered.losses;
  Terms t;
  if (p.spec().principle == PremiumPrinciple::Variance) {
    const double r = q.R(k);
    const double pi = q.premium_variance(k);
    for (std::size_t i = 0; i < st.size(); ++i) {
      t.trig += (q.h1[i] - r) * u.du(w0 - st[i] + q.h1[i] * k + q.H3[i] - pi);
    }
    for (double s : sn) t.untrig += u.du(w0 - s - pi);
    t.factor = r;
  } else {
    const double rho1 = 1.0 + p.spec().rho;
    for (std::size_t i = 0; i < st.size(); ++i) {
      t.trig += q.delta1[i] * u.du(w0 - st[i] + q.delta1[i] * k + q.delta3[i]);
    }
    const double pi = rho1 * (q.m1 * k + q.m3);
    for (double s : sn) t.untrig += u.du(w0 - s - pi);
    t.factor = rho1 * q.m1;
  }
  return t;
}

double gap(const IndexProblem& p, double k) {
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

struct KRange {
  double lo, hi;
  bool truncated;
};

KRange k_range(const IndexProblem& p, const SolveOptions& o) {
  const auto& m = p.model();
  if (o.restrict) {
    return {m.H2(Level(o.restrict->first)), m.H2(Level(o.restrict->second)), false};
  }
  if (m.H2_1_unbounded()) {
    return {m.H2_0(), m.H2(Level(m.decomposition().gamma_grid.back())), true};
  }
  return {m.H2_0(), m.H2_1(), false};
}

}  // namespace

std::pair<double, double> IndexProblem::v_at(double k) const {
  const Terms t = terms_at(*this, k);
  const double n = static_cast<double>(n_);
  return {t.trig / n, t.factor * t.untrig / n};
}

double IndexProblem::bound_lhs(double k) const {
  const Terms t = terms_at(*this, k);
  const double nt = static_cast<double>(split_.triggered.size());
  const double nn = static_cast<double>(split_.untriggered.size());
  const double num = t.trig / nt;
  const double den = t.untrig / nn;
  if (spec_.principle == PremiumPrinciple::Variance) return num / (t.factor * den);
  return num / den;
}

double IndexProblem::threshold() const {
  const double pt = split_.p_trigger;
  if (spec_.principle == PremiumPrinciple::Variance) return (1.0 - pt) / pt;
  return q_.bE;
}

double IndexProblem::utility_at(double k) const {
  const auto& u = utility_.utility;
  const double pi = premium_at(k);
  double acc = 0.0;
  const auto& st = split_.triggered.losses;
  for (std::size_t i = 0; i < st.size(); ++i) {
    acc += u.u(utility_.w0 - st[i] + q_.h1[i] * k + q_.H3[i] - pi);
  }
  for (double s : split_.untriggered.losses) acc += u.u(utility_.w0 - s - pi);
  return acc / static_cast<double>(n_);
}

double IndexProblem::utility_no_insurance() const {
  const auto& u = utility_.utility;
  double acc = 0.0;
  for (double s : split_.triggered.losses) acc += u.u(utility_.w0 - s);
  for (double s : split_.untriggered.losses) acc += u.u(utility_.w0 - s);
  return acc / static_cast<double>(n_);
}

std::pair<double, double> v1_v2_index(const IndexProblem& problem, Level gamma) {
  return problem.v_at(problem.model().H2(gamma));
}

BoundCheck check_bounds_index(const IndexProblem& problem, const SolveOptions& options) {
  const KRange r = k_range(problem, options);
  BoundCheck bc;
  bc.threshold = problem.threshold();
  bc.lower_k = r.lo;
  bc.lower_lhs = problem.bound_lhs(r.lo);
  bc.lower_holds = gap(problem, r.lo) > 0.0;
  bc.upper_truncated = r.truncated;

  const int n = std::max(options.scan_points, 2);
  std::vector<double> ks;
  for (int j = 1; j < n; ++j) {
    const double frac = std::exp(std::log(1e-9) * j / (n - 1));
    ks.push_back(r.hi - (r.hi - r.lo) * frac);
  }
  ks.push_back(r.hi);
  bc.upper_holds = false;
  bc.upper_k = r.hi;
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

Decision violated_boundary_decision_index(const IndexProblem& problem, const BoundCheck& bounds,
                                          double indemnity_loading, WeightingSolution* diag) {
  if (!bounds.lower_holds && !bounds.upper_holds) {
    throw MonotonicityError("both boundary conditions violated");
  }
  const auto& model = problem.model();
  const auto& cond = model.model();
  const auto& knots = model.decomposition().knots;
  if (!bounds.lower_holds) {
    const double u0 = problem.utility_no_insurance();
    if (diag) diag->utility_no_insurance = u0;
    double scale = 0.0;
    for (double h : model.decomposition().H3) scale = std::max(scale, std::abs(h));
    std::size_t zero = 0;
    for (double t : knots) {
      if (std::abs(cond.ess_inf(t)) <= 1e-12 * scale) ++zero;
    }
    // Almost all knots: allow one stray bin.
    if (zero + 1 >= knots.size()) return Decision::PreferNoInsurance;
    const double ulim = problem.utility_at(model.H2_0());
    if (diag) diag->utility_limit = ulim;
    return ulim > u0 ? Decision::PreferSmallestAlpha : Decision::PreferNoInsurance;
  }

  if (model.H2_1_unbounded()) return Decision::PreferIndemnity;
  const auto& sample_t = problem.split().triggered;
  const auto& sample_n = problem.split().untriggered;
  const double n = static_cast<double>(problem.n());
  double mean = 0.0;
  for (double s : sample_t.losses) mean += s;
  for (double s : sample_n.losses) mean += s;
  mean /= n;
  const double ratio = indemnity_loading / problem.spec().rho;
  bool indemnity = false;
  if (problem.spec().principle == PremiumPrinciple::Variance) {
    double var = 0.0;
    for (double s : sample_t.losses) var += (s - mean) * (s - mean);
    for (double s : sample_n.losses) var += (s - mean) * (s - mean);
    var /= n;
    double m = 0.0, m2 = 0.0;
    for (double t : sample_t.indices) {
      const double e = cond.ess_sup(t);
      m += e;
      m2 += e * e;
    }
    m /= n;
    const double var_sup = m2 / n - m * m;
    indemnity = var_sup > ratio * var;
  } else {
    double m = 0.0;
    for (double t : sample_t.indices) m += cond.ess_sup(t);
    m /= static_cast<double>(sample_t.size());
    indemnity = m > ratio * mean / problem.split().p_trigger;
  }
  return indemnity ? Decision::PreferIndemnity : Decision::PreferLargestAlpha;
}

WeightingSolution solve_gamma_star_index(const IndexProblem& problem,
                                         const SolveOptions& options) {
  WeightingSolution sol;
  std::vector<double> grid = options.trace_grid.empty() ? default_trace_grid() : options.trace_grid;
  if (options.restrict) {
    const auto [lo, hi] = *options.restrict;
    if (!(lo < hi)) throw NumericDomainError("restricted level interval is empty");
    std::erase_if(grid, [lo, hi](double g) { return g < lo || g > hi; });
  }
  for (double g : grid) {
    const auto [v1, v2] = v1_v2_index(problem, Level(g));
    sol.trace.push_back({g, v1, v2});
  }
  if (options.check_monotone) check_trace(sol.trace);

  sol.bounds = check_bounds_index(problem, options);
  sol.lower_bound_holds = sol.bounds.lower_holds;
  sol.upper_bound_holds = sol.bounds.upper_holds;
  if (sol.bounds.upper_truncated) sol.notes.push_back("upper bound checked on truncated range");

  const auto& model = problem.model();
  if (sol.lower_bound_holds && sol.upper_bound_holds) {
    double lo = sol.bounds.lower_k, hi = sol.bounds.upper_k;
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
    const double g = model.H2_inverse(k);
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
    sol.k_star = model.H2(Level(g));
    return sol;
  }
  sol.decision = violated_boundary_decision_index(
      problem, sol.bounds, options.indemnity_loading.value_or(problem.spec().rho), &sol);
  return sol;
}

}  // namespace basisrisk
