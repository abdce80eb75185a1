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

#include <benchmark/benchmark.h>

#include <vector>

#include "basisrisk/dependence.hpp"
#include "basisrisk/expectile.hpp"
#include "basisrisk/loss_model.hpp"
#include "basisrisk/rng.hpp"
#include "basisrisk/scenarios.hpp"
#include "basisrisk/weighting_index.hpp"
#include "basisrisk/weighting_pure.hpp"

namespace {

using namespace basisrisk;

std::vector<double> gamma_draws(std::size_t n) {
  Rng rng(1);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.gamma(2.0);
  return v;
}

void BM_SampleConstruction(benchmark::State& state) {
  const auto v = gamma_draws(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EmpiricalSample(v).mean());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleConstruction)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();

void BM_Expectile(benchmark::State& state) {
  const EmpiricalSample s(gamma_draws(static_cast<std::size_t>(state.range(0))));
  double g = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expectile(s, Level(g)));
    g = g > 0.98 ? 0.01 : g + 0.01;
  }
}
BENCHMARK(BM_Expectile)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_PureSolve(benchmark::State& state) {
  WindScenarioOptions o;
  o.n = static_cast<std::size_t>(state.range(0));
  o.family = PayoutFamily::PurePar;
  const Scenario sc = wind_scenario(o);
  const PureProblem p(sc.sample, sc.spec, sc.utility);
  for (auto _ : state) benchmark::DoNotOptimize(solve_gamma_star(p).gamma_star);
}
BENCHMARK(BM_PureSolve)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_IndexSolve(benchmark::State& state) {
  WindScenarioOptions o;
  o.n = static_cast<std::size_t>(state.range(0));
  const Scenario sc = wind_scenario(o);
  const auto model = loss_model_conditional(o.loss);
  const SeparableIndexModel sep(model, split_by_trigger(sc.sample, sc.spec).triggered.indices);
  const IndexProblem p(sc.sample, sc.spec, sc.utility, sep);
  for (auto _ : state) benchmark::DoNotOptimize(solve_gamma_star_index(p).gamma_star);
}
BENCHMARK(BM_IndexSolve)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_KendallTau(benchmark::State& state) {
  const auto p = simulate_gumbel(static_cast<std::size_t>(state.range(0)), 2.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTau)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity(benchmark::oNLogN);

void BM_ChatterjeeXi(benchmark::State& state) {
  const auto p = simulate_gumbel(static_cast<std::size_t>(state.range(0)), 2.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(chatterjee_xi(p));
}
BENCHMARK(BM_ChatterjeeXi)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_TailEstimate(benchmark::State& state) {
  const auto p = simulate_gumbel(static_cast<std::size_t>(state.range(0)), 2.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_tail(p).lambda_hat);
}
BENCHMARK(BM_TailEstimate)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
