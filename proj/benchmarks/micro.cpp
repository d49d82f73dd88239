// Copyright 2026 The condbisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "condbisim/bdd.hpp"
#include "condbisim/bisim.hpp"
#include "condbisim/features.hpp"
#include "condbisim/models.hpp"
#include "condbisim/symbolic.hpp"

namespace condbisim {
namespace {

std::vector<std::string> feature_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("f" + std::to_string(i));
  return out;
}

// Random DNF over n features: a conjunction of literals per term.
FeatureExpr random_dnf(std::mt19937_64& rng, std::size_t n, int terms) {
  std::string text;
  for (int t = 0; t < terms; ++t) {
    if (t) text += " | ";
    text += "(true";
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = rng() % 3;
      if (r == 0) text += " & f" + std::to_string(i);
      if (r == 1) text += " & !f" + std::to_string(i);
    }
    text += ")";
  }
  return parse_feature_expr(text);
}

void BM_BddFromExpr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FeatureUniverse u(feature_names(n), {});
  std::mt19937_64 rng(1);
  const FeatureExpr e = random_dnf(rng, n, 8);
  for (auto _ : state) {
    bdd::Manager m(n);
    benchmark::DoNotOptimize(bdd::from_expr(m, u, e));
  }
}
BENCHMARK(BM_BddFromExpr)->RangeMultiplier(2)->Range(4, 32);

void BM_ApproxBdd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto names = feature_names(n);
  const FeatureUniverse u(names, std::vector<std::string>(names.begin(), names.begin() + n / 2));
  std::mt19937_64 rng(2);
  const FeatureExpr e = random_dnf(rng, n, 8);
  for (auto _ : state) {
    bdd::Manager m(n);
    benchmark::DoNotOptimize(bdd::approx_bdd(bdd::from_expr(m, u, e), u));
  }
}
BENCHMARK(BM_ApproxBdd)->RangeMultiplier(2)->Range(4, 32);

void BM_FixpointExplicit(benchmark::State& state) {
  const auto [l, r] = gen_benchmark_lats(static_cast<std::size_t>(state.range(0)));
  BisimOptions opts;
  opts.keep_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(greatest_bisimulation(l, r, opts).relation);
}
BENCHMARK(BM_FixpointExplicit)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FixpointSymbolic(benchmark::State& state) {
  const auto [l, r] = gen_benchmark(static_cast<std::size_t>(state.range(0)));
  BisimOptions opts;
  opts.keep_trace = false;
  for (auto _ : state) {
    const SymbolicPair pair = encode_fts(l, r);
    const auto alg = pair.algebra();
    benchmark::DoNotOptimize(greatest_bisimulation(alg, pair.left, pair.right, opts).relation);
  }
}
BENCHMARK(BM_FixpointSymbolic)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace condbisim

BENCHMARK_MAIN();
