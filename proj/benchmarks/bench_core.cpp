// SPDX-License-Identifier: Apache-2.0
//
// rtris: ray-traced channel simulator for reconfigurable intelligent surfaces
// Copyright (C) 2026 The rtris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include <random>

#include "rtris/channel.hpp"
#include "rtris/em.hpp"
#include "rtris/ris.hpp"
#include "rtris/scenarios.hpp"
#include "rtris/tracer.hpp"
#include "rtris/utd.hpp"

using namespace rtris;

namespace {

const Scene& suburb() {
  static const Scene s = load_scene(resolve_scene_path("suburb-28ghz", {}));
  return s;
}

void BM_Fresnel(benchmark::State& state) {
  const cdouble eps = itu_permittivity(*MaterialLibrary::defaults().find("concrete"), 28.0);
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fresnel(eps, a));
    a = a > 1.5 ? 0.1 : a + 1e-3;
  }
}
BENCHMARK(BM_Fresnel);

void BM_UtdCoefficients(benchmark::State& state) {
  const double k = wavenumber(28.0);
  double phi = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(utd_coefficients(1.5, phi, 0.7, 1.2, 4.0, k, WedgeReflections::conducting()));
    phi = phi > 4.0 ? 0.5 : phi + 1e-3;
  }
}
BENCHMARK(BM_UtdCoefficients);

void BM_OptimalCascade(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<cdouble> ht(n), hr(n);
  for (auto& v : ht) v = {g(rng), g(rng)};
  for (auto& v : hr) v = {g(rng), g(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(cascade(ht, hr, optimal_coeffs(ht, hr).phases));
  state.SetComplexityN(n);
}
BENCHMARK(BM_OptimalCascade)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_PathFinderBuild(benchmark::State& state) {
  TraceConfig cfg;
  cfg.max_reflections = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PathFinder f(suburb(), {4, -20, 5}, cfg);
    benchmark::DoNotOptimize(f.stored_segments());
  }
}
BENCHMARK(BM_PathFinderBuild)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_PathFinderQuery(benchmark::State& state) {
  TraceConfig cfg;
  cfg.max_reflections = 3;
  const PathFinder f(suburb(), {4, -20, 5}, cfg);
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.paths_to({11, 4 + y, 1}));
    y = y > 10 ? 0.0 : y + 0.278;
  }
}
BENCHMARK(BM_PathFinderQuery)->Unit(benchmark::kMicrosecond);

void BM_ScenarioB(benchmark::State& state) {
  nlohmann::json doc = load_preset("scenario_b");
  apply_override(doc, "random_trials=10");
  const ScenarioConfig cfg = scenario_from_json(doc);
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(suburb(), cfg, {1, false}).rows.size());
}
BENCHMARK(BM_ScenarioB)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
