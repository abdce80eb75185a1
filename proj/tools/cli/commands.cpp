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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "basisrisk/dependence.hpp"
#include "basisrisk/errors.hpp"
#include "basisrisk/weighting_index.hpp"
#include "basisrisk/weighting_pure.hpp"

namespace basisrisk::cli {
namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const WeightingSolution& s) {
  Json j;
  j["gamma_star"] = opt(s.gamma_star);
  j["alpha_star"] = opt(s.alpha_star);
  j["decision"] = to_string(s.decision);
  j["lower_bound_holds"] = s.lower_bound_holds;
  j["upper_bound_holds"] = s.upper_bound_holds;
  j["k_star"] = s.gamma_star ? Json(s.k_star) : Json(nullptr);
  j["residual"] = s.residual;
  j["bounds"] = {{"lower_k", finite_or_null(s.bounds.lower_k)},
                 {"lower_lhs", finite_or_null(s.bounds.lower_lhs)},
                 {"upper_k", finite_or_null(s.bounds.upper_k)},
                 {"upper_lhs", finite_or_null(s.bounds.upper_lhs)},
                 {"threshold", finite_or_null(s.bounds.threshold)},
                 {"upper_truncated", s.bounds.upper_truncated}};
  j["v0"] = opt(s.v0);
  j["utility_no_insurance"] = opt(s.utility_no_insurance);
  j["utility_limit"] = opt(s.utility_limit);
  j["notes"] = s.notes;
  return j;
}

std::string trace_csv(const WeightingSolution& s) {
  CsvWriter w({"gamma", "v1", "v2"});
  for (const auto& t : s.trace) {
    const double r[] = {t.gamma, t.v1, t.v2};
    w.row(r);
  }
  return w.str();
}

SolveOptions solve_options(const RunConfig& config) {
  const Json& w = config.section("weighting");
  SolveOptions o;
  if (auto g = w.find("grid"); g != w.end()) o.trace_grid = gamma_grid_from(*g);
  if (auto r = w.find("restrict"); r != w.end()) {
    if (!r->is_array() || r->size() != 2 || !(*r)[0].is_number() || !(*r)[1].is_number()) {
      throw ConfigError("weighting.restrict must be [gamma_lo, gamma_hi]");
    }
    const double lo = (*r)[0].get<double>(), hi = (*r)[1].get<double>();
    if (!(lo > 0.0 && hi < 1.0 && lo < hi)) throw ConfigError("weighting.restrict out of range");
    o.restrict = std::make_pair(lo, hi);
  }
  if (auto i = w.find("indemnity_loading"); i != w.end()) {
    if (!i->is_number()) throw ConfigError("weighting.indemnity_loading must be a number");
    o.indemnity_loading = i->get<double>();
  }
  o.scan_points = static_cast<int>(get_size(w, "scan_points", 50));
  return o;
}

DecomposeOptions decompose_options(const RunConfig& config) {
  const Json& w = config.section("weighting");
  DecomposeOptions d;
  d.tolerance = get_number(w, "separability_tolerance", d.tolerance);
  d.mask_fraction = get_number(w, "separability_mask", d.mask_fraction);
  return d;
}

struct IndexRun {
  WeightingSolution solution;
  Json decomposition;
};

IndexRun solve_index(const RunConfig& config, const LoadedSample& loaded,
                     const ContractSpec& spec, const UtilityContext& utility) {
  if (spec.principle == PremiumPrinciple::StdDev) {
    throw NumericDomainError("unsupported premium principle for index insurance");
  }
  const auto cond = conditioner_for(config, loaded, spec);
  const TriggerSplit split = split_by_trigger(loaded.sample, spec);
  const SeparableIndexModel model(*cond, split.triggered.indices, decompose_options(config));
  const IndexProblem problem(loaded.sample, spec, utility, model);
  IndexRun run{solve_gamma_star_index(problem, solve_options(config)), {}};
  const auto& d = model.decomposition();
  run.decomposition = {{"residual", d.residual},
                       {"knots", d.knots.size()},
                       {"reference_knot", d.knots[d.ref_index]},
                       {"H2_0", model.H2_0()},
                       {"H2_1", finite_or_null(model.H2_1())},
                       {"H2_1_unbounded", model.H2_1_unbounded()}};
  return run;
}

Json slope_json(const SlopeFit& f) {
  return {{"slope", f.slope},
          {"objective", f.objective},
          {"at_boundary", f.at_boundary},
          {"grid_fallback", f.grid_fallback},
          {"warnings", f.warnings}};
}

std::vector<double> histogram_edges(double lo, double hi, std::size_t bins) {
  if (!(hi > lo)) hi = lo + 1.0;
  std::vector<double> e(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) e[i] = lo + (hi - lo) * i / bins;
  return e;
}

std::size_t bin_index(const std::vector<double>& edges, double x) {
  const std::size_t bins = edges.size() - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  const auto b = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - edges.begin() - 1));
  return std::min(b, bins - 1);
}

std::string matrix_csv(const std::vector<std::string>& names, const ProbabilityMatrix& m) {
  std::vector<std::string> header = {"site"};
  header.insert(header.end(), names.begin(), names.end());
  CsvWriter w(header);
  for (std::size_t a = 0; a < names.size(); ++a) {
    std::vector<std::string> row = {names[a]};
    for (std::size_t b = 0; b < names.size(); ++b) row.push_back(cell(m[a][b]));
    w.row(row);
  }
  return w.str();
}

}  // namespace

OutputBundle cmd_fit_weighting(const RunConfig& config) {
  const Json& contract = config.section("contract");
  const ContractSpec base = contract_from(contract);
  const auto families = families_from(contract);
  const UtilityContext utility = utility_from(config.section("utility"));
  const LoadedSample loaded = load_sample(config);
  const SolveOptions options = solve_options(config);

  OutputBundle out;
  std::optional<double> gamma_for_fit;
  if (auto g = config.section("weighting").find("gamma_star");
      g != config.section("weighting").end()) {
    if (!g->is_number()) throw ConfigError("weighting.gamma_star must be a number");
    gamma_for_fit = g->get<double>();
  }
  for (PayoutFamily family : families) {
    ContractSpec spec = base;
    spec.family = family;
    const std::string name = to_string(family);
    if (family == PayoutFamily::PurePar) {
      const PureProblem problem(loaded.sample, spec, utility);
      const WeightingSolution sol = solve_gamma_star(problem, options);
      Json j = to_json(sol);
      if (utility.utility.is_exponential() && spec.principle == PremiumPrinciple::ExpectedValue) {
        try {
          const ClosedForm cf = closed_form_exponential(problem);
          j["closed_form"] = {{"alpha_star", cf.alpha_star},
                              {"gamma_star", cf.gamma_star},
                              {"x_exp", cf.x_exp}};
          if (sol.alpha_star) j["closed_form"]["alpha_delta"] = std::abs(cf.alpha_star - *sol.alpha_star);
        } catch (const NumericDomainError& e) {
          j["closed_form"] = {{"error", e.what()}};
        }
      }
      if (!gamma_for_fit && sol.gamma_star) gamma_for_fit = sol.gamma_star;
      out.add_json("solution_" + name + ".json", j);
      out.add("trace_" + name + ".csv", trace_csv(sol));
    } else if (family == PayoutFamily::IndexPar) {
      IndexRun run = solve_index(config, loaded, spec, utility);
      Json j = to_json(run.solution);
      j["decomposition"] = run.decomposition;
      if (run.solution.gamma_star) gamma_for_fit = run.solution.gamma_star;
      out.add_json("solution_" + name + ".json", j);
      out.add("trace_" + name + ".csv", trace_csv(run.solution));
    } else {
      Json j;
      if (gamma_for_fit) {
        const SlopeFit f = fit_piecewise_linear(loaded.sample, spec,
                                                BasisRiskOptimal{Level(*gamma_for_fit)});
        j["basis_risk_optimal"] = slope_json(f);
        j["basis_risk_optimal"]["gamma_star"] = *gamma_for_fit;
        const PayoutVector pay = piecewise_linear_payout(loaded.sample, spec, f.slope);
        const auto b = basis_risk(loaded.sample.losses, pay);
        double mean = 0.0;
        for (double x : b) mean += x;
        j["basis_risk_optimal"]["mean_basis_risk"] = mean / static_cast<double>(b.size());
        j["basis_risk_optimal"]["premium"] = premium(pay, spec);
      } else {
        j["basis_risk_optimal"] = nullptr;
      }
      const SlopeFit fu = fit_piecewise_linear(loaded.sample, spec, PureUtility{utility});
      j["pure_utility"] = slope_json(fu);
      const PayoutVector pay = piecewise_linear_payout(loaded.sample, spec, fu.slope);
      j["pure_utility"]["premium"] = premium(pay, spec);
      out.add_json("solution_" + name + ".json", j);
    }
  }
  return out;
}

OutputBundle cmd_simulate(const RunConfig& config) {
  const Json& sim = config.section("simulation");
  const LoadedSample loaded = load_sample(config);
  const auto& s = loaded.sample;
  OutputBundle out;

  std::ostringstream sample_csv;
  write_sample_csv(sample_csv, s);
  out.add("sample.csv", sample_csv.str());

  const auto [imin, imax] = std::minmax_element(s.indices.begin(), s.indices.end());
  {
    const std::size_t bins = get_size(sim, "histogram_bins", 40);
    const auto edges = histogram_edges(std::floor(*imin), std::ceil(*imax), bins);
    std::vector<std::size_t> count(bins, 0);
    for (double x : s.indices) ++count[bin_index(edges, x)];
    CsvWriter w({"bin_lo", "bin_hi", "count"});
    for (std::size_t b = 0; b < bins; ++b) {
      const double r[] = {edges[b], edges[b + 1], static_cast<double>(count[b])};
      w.row(r);
    }
    out.add("wind_histogram.csv", w.str());
  }
  {
    const std::size_t bins = get_size(sim, "envelope_bins", 40);
    const auto edges = histogram_edges(std::floor(*imin), std::ceil(*imax), bins);
    std::vector<std::size_t> count(bins, 0);
    std::vector<double> sum(bins, 0.0), lo(bins, INFINITY), hi(bins, -INFINITY);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t b = bin_index(edges, s.indices[i]);
      ++count[b];
      sum[b] += s.losses[i];
      lo[b] = std::min(lo[b], s.losses[i]);
      hi[b] = std::max(hi[b], s.losses[i]);
    }
    CsvWriter w({"theta", "count", "mean", "min", "max"});
    for (std::size_t b = 0; b < bins; ++b) {
      if (count[b] == 0) continue;
      const double r[] = {0.5 * (edges[b] + edges[b + 1]), static_cast<double>(count[b]),
                          sum[b] / static_cast<double>(count[b]), lo[b], hi[b]};
      w.row(r);
    }
    out.add("loss_envelope.csv", w.str());
  }

  if (auto qs = sim.find("q_sweep"); qs != sim.end()) {
    if (!qs->is_array() || qs->empty()) throw ConfigError("simulation.q_sweep must be an array");
    if (loaded.source != "loss_model") throw ConfigError("q_sweep needs sample.source loss_model");
    ContractSpec spec = contract_from(config.section("contract"));
    spec.family = PayoutFamily::IndexPar;
    const UtilityContext utility = utility_from(config.section("utility"));
    CsvWriter w({"q", "gamma_star", "alpha_star", "decision"});
    for (const auto& qv : *qs) {
      if (!qv.is_number()) throw ConfigError("q_sweep entries must be numbers");
      RunConfig c = config;
      c.raw["sample"]["loss"]["q"] = qv.get<double>();
      const LoadedSample ls = load_sample(c);
      const IndexRun run = solve_index(c, ls, spec, utility);
      w.row(std::vector<std::string>{format_number(qv.get<double>()),
                                     cell(run.solution.gamma_star),
                                     cell(run.solution.alpha_star),
                                     to_string(run.solution.decision)});
    }
    out.add("q_sweep.csv", w.str());
  }
  return out;
}

OutputBundle cmd_dependence_report(const RunConfig& config) {
  auto it = config.raw.find("sites");
  if (it == config.raw.end() || !it->is_array() || it->size() < 2) {
    throw ConfigError("dependence-report needs at least 2 sites");
  }
  std::vector<Site> sites;
  std::vector<LossModelParams> params;
  for (const auto& j : *it) {
    sites.push_back(site_from(j));
    params.push_back(loss_params_from(j.contains("loss") ? j.at("loss") : Json::object()));
  }
  const TrackSet tracks = load_tracks(config);
  const Portfolio pf = simulate_portfolio(tracks, sites, params, config.seed);
  const Json& dep = config.section("dependence");
  const double threshold = get_number(dep, "threshold_kn", 83.0);
  const std::size_t min_joint = get_size(dep, "min_joint", 30);
  const std::size_t ns = sites.size();
  const auto& names = pf.site_names;

  OutputBundle out;
  {
    std::vector<std::string> header = {"track_id"};
    for (const auto& n : names) header.push_back("wind_" + n);
    for (const auto& n : names) header.push_back("loss_" + n);
    CsvWriter w(header);
    for (std::size_t i = 0; i < tracks.tracks.size(); ++i) {
      std::vector<std::string> row = {tracks.tracks[i].id};
      for (std::size_t s = 0; s < ns; ++s) row.push_back(format_number(pf.winds[s][i]));
      for (std::size_t s = 0; s < ns; ++s) row.push_back(format_number(pf.losses[s][i]));
      w.row(row);
    }
    out.add("portfolio.csv", w.str());
  }

  const ConditionalProbabilities cp = conditional_probabilities(pf.winds, threshold);
  out.add("p_inc.csv", matrix_csv(names, cp.p_inc));
  out.add("p_trig.csv", matrix_csv(names, cp.p_trig));

  Json warnings = cp.warnings;
  ProbabilityMatrix tau(ns, std::vector<std::optional<double>>(ns));
  ProbabilityMatrix xi = tau;
  Json pairs = Json::array();
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) {
      if (a == b) continue;
      PairedObservations po;
      for (std::size_t i = 0; i < tracks.tracks.size(); ++i) {
        if (pf.winds[a][i] > 0.0 && pf.winds[b][i] > 0.0) {
          po.x.push_back(pf.winds[a][i]);
          po.y.push_back(pf.winds[b][i]);
        }
      }
      const std::string label = names[a] + "/" + names[b];
      if (po.m() < 3) {
        if (a < b) warnings.push_back(label + ": fewer than 3 joint incidents");
        continue;
      }
      try {
        xi[a][b] = chatterjee_xi(po, config.seed);
      } catch (const DegenerateDataError& e) {
        warnings.push_back(label + ": xi " + e.what());
      }
      if (a > b) continue;
      try {
        tau[a][b] = tau[b][a] = kendall_tau(po);
      } catch (const DegenerateDataError& e) {
        warnings.push_back(label + ": tau " + e.what());
      }
      const auto rx = strict_ranks(po.x);
      const auto ry = strict_ranks(po.y);
      CsvWriter rw({"rank_a", "rank_b", "u_a", "u_b"});
      const double denom = static_cast<double>(po.m()) + 1.0;
      for (std::size_t j = 0; j < po.m(); ++j) {
        const double r[] = {static_cast<double>(rx[j]), static_cast<double>(ry[j]),
                            rx[j] / denom, ry[j] / denom};
        rw.row(r);
      }
      out.add("ranks_" + names[a] + "_" + names[b] + ".csv", rw.str());
      if (po.m() < min_joint) {
        warnings.push_back(label + ": fewer than " + std::to_string(min_joint) +
                           " joint observations; tail estimate omitted");
        continue;
      }
      const TailEstimate t = estimate_tail(po);
      Json p = {{"site_a", names[a]},         {"site_b", names[b]},
                {"m", t.m},                   {"k", t.k},
                {"lambda_hat", t.lambda_hat}, {"eta_hat", t.eta_hat},
                {"sigma_u_sq", t.sigma_u_sq}, {"ci_low", t.ci_low},
                {"ci_high", t.ci_high},       {"warnings", t.warnings}};
      if (tau[a][b] && *tau[a][b] < 1.0) p["eta_tau_inversion"] = 1.0 / (1.0 - *tau[a][b]);
      pairs.push_back(p);
    }
  }
  out.add("kendall_tau.csv", matrix_csv(names, tau));
  out.add("chatterjee_xi.csv", matrix_csv(names, xi));
  out.add_json("tail.json", {{"pairs", pairs}, {"warnings", warnings}, {"threshold_kn", threshold}});
  return out;
}

OutputBundle cmd_utility_curve(const RunConfig& config) {
  const ContractSpec spec = contract_from(config.section("contract"));
  if (spec.family == PayoutFamily::PiecewiseLinear) {
    throw ConfigError("utility-curve needs the pure or index family");
  }
  const UtilityContext utility = utility_from(config.section("utility"));
  const LoadedSample loaded = load_sample(config);
  const Json& w = config.section("weighting");
  const std::vector<double> grid =
      gamma_grid_from(w.contains("grid") ? w.at("grid") : Json(nullptr));
  std::shared_ptr<const ConditionalModel> cond;
  if (spec.family == PayoutFamily::IndexPar) cond = conditioner_for(config, loaded, spec);
  const auto curve = utility_curve(loaded.sample, spec, utility, grid, cond.get());

  OutputBundle out;
  CsvWriter csv({"gamma", "u1", "u2", "u"});
  std::size_t best = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double r[] = {curve[i].gamma, curve[i].u1, curve[i].u2, curve[i].u};
    csv.row(r);
    if (curve[i].u > curve[best].u) best = i;
  }
  out.add("utility_curve.csv", csv.str());
  out.add_json("utility_summary.json",
               {{"points", curve.size()},
                {"argmax_gamma", curve[best].gamma},
                {"argmax_index", best},
                {"max_utility", curve[best].u},
                {"interior_maximum", curve.size() >= 3 && best > 0 && best + 1 < curve.size()}});
  return out;
}

}  // namespace basisrisk::cli
