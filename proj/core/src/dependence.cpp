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

#include "basisrisk/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {
namespace {

// Number of pairs i < j with v[i] > v[j]; sorts v.
std::uint64_t count_inversions(std::vector<double>& v) {
  std::vector<double> buf(v.size());
  std::uint64_t swaps = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += mid - i;
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    v.swap(buf);
  }
  return swaps;
}

// Sum of t (t - 1) / 2 over runs of equal adjacent values.
template <typename Eq>
std::uint64_t tied_pairs(std::size_t n, Eq eq) {
  std::uint64_t total = 0, run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && eq(i - 1, i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

}  // namespace

void PairedObservations::validate() const {
  if (x.size() != y.size()) throw NumericDomainError("paired columns differ in length");
  if (x.size() < 2) throw DegenerateDataError("need at least 2 pairs");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw NumericDomainError("non-finite paired observation");
    }
  }
}

ConditionalProbabilities conditional_probabilities(const std::vector<std::vector<double>>& winds,
                                                   double threshold) {
  const std::size_t s = winds.size();
  if (s < 2) throw NumericDomainError("need at least 2 sites");
  const std::size_t n = winds[0].size();
  for (const auto& col : winds) {
    if (col.size() != n) throw NumericDomainError("site columns differ in length");
  }
  ConditionalProbabilities out;
  out.p_inc.assign(s, std::vector<std::optional<double>>(s));
  out.p_trig.assign(s, std::vector<std::optional<double>>(s));
  auto fill = [&](ProbabilityMatrix& mat, auto event, const char* what) {
    for (std::size_t b = 0; b < s; ++b) {
      std::size_t den = 0;
      for (std::size_t i = 0; i < n; ++i) den += event(winds[b][i]);
      for (std::size_t a = 0; a < s; ++a) {
        if (a == b) continue;
        if (den == 0) {
          out.warnings.push_back(std::string("no ") + what + " at site " + std::to_string(b) +
                                 "; conditional entries left empty");
          break;
        }
        std::size_t num = 0;
        for (std::size_t i = 0; i < n; ++i) num += event(winds[a][i]) && event(winds[b][i]);
        mat[a][b] = static_cast<double>(num) / static_cast<double>(den);
      }
    }
  };
  fill(out.p_inc, [](double w) { return w > 0.0; }, "incidents");
  fill(out.p_trig, [threshold](double w) { return w >= threshold; }, "triggers");
  return out;
}

double kendall_tau(const PairedObservations& pairs) {
  pairs.validate();
  const std::size_t m = pairs.m();
  const auto& x = pairs.x;
  const auto& y = pairs.y;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  const std::uint64_t n0 = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  const std::uint64_t n1 =
      tied_pairs(m, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
  const std::uint64_t n3 = tied_pairs(m, [&](std::size_t i, std::size_t j) {
    return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]];
  });
  std::vector<double> ys(m);
  for (std::size_t i = 0; i < m; ++i) ys[i] = y[order[i]];
  const std::uint64_t swaps = count_inversions(ys);
  const std::uint64_t n2 = tied_pairs(m, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });
  if (n0 == n1 || n0 == n2) throw DegenerateDataError("zero variance ranks");
  const auto num = static_cast<double>(static_cast<std::int64_t>(n0 - n1 - n2 + n3) -
                                       2 * static_cast<std::int64_t>(swaps));
  // Equal margins give an exact denominator, so monotone data hit +-1 exactly.
  const std::uint64_t a = n0 - n1, b = n0 - n2;
  const double den = a == b ? static_cast<double>(a)
                            : std::sqrt(static_cast<double>(a)) * std::sqrt(static_cast<double>(b));
  return std::clamp(num / den, -1.0, 1.0);
}

double chatterjee_xi(const PairedObservations& pairs, std::uint64_t seed) {
  pairs.validate();
  const std::size_t m = pairs.m();
  if (m < 3) throw DegenerateDataError("need at least 3 pairs");
  Rng rng(seed);
  std::vector<std::uint64_t> key(m);
  for (auto& k : key) k = rng.next_u64();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pairs.x[a] != pairs.x[b]) return pairs.x[a] < pairs.x[b];
    return key[a] < key[b] || (key[a] == key[b] && a < b);
  });
  std::vector<double> sorted_y = pairs.y;
  std::sort(sorted_y.begin(), sorted_y.end());
  std::vector<std::int64_t> r(m), l(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double yi = pairs.y[order[i]];
    r[i] = std::upper_bound(sorted_y.begin(), sorted_y.end(), yi) - sorted_y.begin();
    l[i] = sorted_y.end() - std::lower_bound(sorted_y.begin(), sorted_y.end(), yi);
  }
  // Integer sums keep the no-ties value exact.
  std::int64_t jumps = 0, spread = 0;
  const auto mi = static_cast<std::int64_t>(m);
  for (std::size_t i = 0; i + 1 < m; ++i) jumps += std::abs(r[i + 1] - r[i]);
  for (std::size_t i = 0; i < m; ++i) spread += l[i] * (mi - l[i]);
  if (spread == 0) throw DegenerateDataError("constant response");
  const double num = static_cast<double>(mi * jumps);
  const double den = 2.0 * static_cast<double>(spread);
  return (den - num) / den;
}

std::vector<std::size_t> strict_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<std::size_t> rank(v.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i + 1;
  return rank;
}

std::vector<double> tail_lambda_curve(const PairedObservations& pairs) {
  pairs.validate();
  const std::size_t m = pairs.m();
  const auto rx = strict_ranks(pairs.x);
  const auto ry = strict_ranks(pairs.y);
  // Pair j exceeds at level k iff m - min(rx, ry) <= k - 1.
  std::vector<std::size_t> hist(m, 0);
  for (std::size_t j = 0; j < m; ++j) ++hist[m - std::min(rx[j], ry[j])];
  std::vector<double> out(m - 1);
  std::size_t cum = 0;
  for (std::size_t k = 1; k < m; ++k) {
    cum += hist[k - 1];
    out[k - 1] = static_cast<double>(cum) / static_cast<double>(k);
  }
  return out;
}

double tail_lambda(const PairedObservations& pairs, std::size_t k) {
  pairs.validate();
  const std::size_t m = pairs.m();
  if (k < 1 || k >= m) throw NumericDomainError("k must lie in [1, m - 1]");
  const auto rx = strict_ranks(pairs.x);
  const auto ry = strict_ranks(pairs.y);
  std::size_t count = 0;
  for (std::size_t j = 0; j < m; ++j) count += rx[j] > m - k && ry[j] > m - k;
  return static_cast<double>(count) / static_cast<double>(k);
}

PlateauResult plateau_k(const PairedObservations& pairs, const PlateauOptions& options) {
  pairs.validate();
  const std::size_t m = pairs.m();
  if (m < 30) throw DegenerateDataError("insufficient data for plateau selection");
  const auto curve = tail_lambda_curve(pairs);
  const std::size_t b =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(options.bandwidth_fraction * m)));
  // Smoothed values for k = 1 + b .. m - 1 - b.
  const std::size_t k0 = 1 + b;
  std::vector<double> smooth;
  for (std::size_t k = k0; k + b <= m - 1; ++k) {
    double acc = 0.0;
    for (std::size_t j = k - b; j <= k + b; ++j) acc += curve[j - 1];
    smooth.push_back(acc / static_cast<double>(2 * b + 1));
  }
  PlateauResult res;
  const auto w = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(m - 2 * b))));
  if (!smooth.empty() && w >= 1 && w <= smooth.size()) {
    const double mean = std::accumulate(smooth.begin(), smooth.end(), 0.0) / smooth.size();
    double var = 0.0;
    for (double s : smooth) var += (s - mean) * (s - mean);
    const double sd = std::sqrt(var / smooth.size());
    for (std::size_t start = 0; start + w <= smooth.size(); ++start) {
      const auto [lo, hi] = std::minmax_element(smooth.begin() + start, smooth.begin() + start + w);
      if (*hi - *lo <= options.range_factor * sd) {
        res.k = k0 + start + w / 2;
        res.lambda = curve[res.k - 1];
        return res;
      }
    }
  }
  res.fallback = true;
  res.k = std::min<std::size_t>(m - 1, static_cast<std::size_t>(std::floor(std::sqrt(m))));
  res.lambda = curve[res.k - 1];
  res.warnings.push_back("no plateau found; using k = floor(sqrt(m))");
  return res;
}

double gumbel_log_density(double u, double v, double eta) {
  const double x = -std::log(u);
  const double y = -std::log(v);
  const double hi = std::max(x, y), lo = std::min(x, y);
  const double log_s = eta * std::log(hi) + std::log1p(std::pow(lo / hi, eta));
  const double w = std::exp(log_s / eta);
  return -w - std::log(u) - std::log(v) + (eta - 1.0) * (std::log(x) + std::log(y)) +
         (2.0 / eta - 2.0) * log_s + std::log1p((eta - 1.0) / w);
}

GumbelFit gumbel_mle(const PairedObservations& pairs) {
  pairs.validate();
  const std::size_t m = pairs.m();
  if (m < 10) throw DegenerateDataError("need at least 10 pairs for the copula fit");
  const auto rx = strict_ranks(pairs.x);
  const auto ry = strict_ranks(pairs.y);
  const double denom = static_cast<double>(m) + 1.0;
  auto loglik = [&](double eta) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += gumbel_log_density(rx[j] / denom, ry[j] / denom, eta);
    }
    return acc;
  };
  constexpr double kLo = 1.0, kHi = 50.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = kLo, b = kHi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = loglik(c), fd = loglik(d);
  while (b - a > 1e-7) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = loglik(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = loglik(d);
    }
  }
  GumbelFit fit;
  fit.eta = 0.5 * (a + b);
  // The interior search never evaluates the endpoints themselves.
  const double f_lo = loglik(kLo);
  if (f_lo >= loglik(fit.eta)) fit.eta = kLo;
  fit.log_likelihood = loglik(fit.eta);
  if (fit.eta > kHi - 1e-3) fit.warnings.push_back("near-degenerate dependence");
  return fit;
}

double sigma_u_sq(double eta) {
  if (!(eta >= 1.0)) throw NumericDomainError("copula parameter must be >= 1");
  const double a = std::exp2(1.0 / eta);
  return (2.0 * a - a * a) * (0.5 * a - 0.5);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw NumericDomainError("probability must lie in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step against erfc lifts the accuracy to full precision.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

std::pair<double, double> tail_ci(double lambda_hat, std::size_t k, double eta_hat, double level) {
  if (k == 0) throw NumericDomainError("k must be positive");
  if (!(level > 0.0 && level < 1.0)) throw NumericDomainError("level must lie in (0, 1)");
  const double s2 = sigma_u_sq(eta_hat);
  if (s2 <= 0.0) return {lambda_hat, lambda_hat};
  const double z = normal_quantile(0.5 + 0.5 * level);
  const double half = z * std::sqrt(s2 / static_cast<double>(k));
  return {lambda_hat - half, lambda_hat + half};
}

TailEstimate estimate_tail(const PairedObservations& pairs, const PlateauOptions& options) {
  TailEstimate t;
  t.m = pairs.m();
  PlateauResult plateau = plateau_k(pairs, options);
  t.k = plateau.k;
  t.lambda_hat = plateau.lambda;
  t.warnings = std::move(plateau.warnings);
  GumbelFit fit = gumbel_mle(pairs);
  t.eta_hat = fit.eta;
  for (auto& w : fit.warnings) t.warnings.push_back(std::move(w));
  t.sigma_u_sq = sigma_u_sq(t.eta_hat);
  std::tie(t.ci_low, t.ci_high) = tail_ci(t.lambda_hat, t.k, t.eta_hat);
  return t;
}

PairedObservations simulate_gumbel(std::size_t m, double eta, std::uint64_t seed) {
  if (!(eta >= 1.0)) throw NumericDomainError("copula parameter must be >= 1");
  const double alpha = 1.0 / eta;
  PairedObservations out;
  out.x.resize(m);
  out.y.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    Rng rng(seed, stream_id(7, j));
    double v = 1.0;
    if (alpha < 1.0) {
      // Kanter's representation of the stable law with transform exp(-t^alpha).
      const double th = std::numbers::pi * rng.uniform();
      const double w = rng.exponential();
      v = std::sin(alpha * th) / std::pow(std::sin(th), 1.0 / alpha) *
          std::pow(std::sin((1.0 - alpha) * th) / w, (1.0 - alpha) / alpha);
    }
    out.x[j] = std::exp(-std::pow(rng.exponential() / v, alpha));
    out.y[j] = std::exp(-std::pow(rng.exponential() / v, alpha));
  }
  return out;
}

}  // namespace basisrisk
