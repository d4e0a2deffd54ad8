// Copyright 2026 The Surrogate Compiler Authors
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

#include <benchmark/benchmark.h>

#include "surrogate/emit.h"
#include "surrogate/formulation.h"
#include "surrogate/milp.h"
#include "surrogate/simplex.h"
#include "test_support.h"

namespace surrogate {
namespace {

void BM_Simplex(benchmark::State& state) {
  testing::Rng rng(7);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LinearProgram lp = testing::RandomLp(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveLinearProgram(lp));
  }
}
BENCHMARK(BM_Simplex)->Arg(10)->Arg(40)->Arg(100);

NetworkDefinition BenchNet(std::size_t max_relus) {
  testing::Rng rng(11);
  testing::NetGenOptions options;
  options.max_relus = max_relus;
  options.max_width = 8;
  return testing::RandomNetwork(rng, options);
}

void BM_FormulateBigM(benchmark::State& state) {
  const NetworkDefinition net = BenchNet(24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Formulate(net, {FormulationType::kReluBigM, 2}));
  }
}
BENCHMARK(BM_FormulateBigM);

void BM_SolveMilp(benchmark::State& state) {
  const NetworkDefinition net = BenchNet(12);
  const FormulationKind kind{
      static_cast<FormulationType>(state.range(0)), 2};
  const OptProblem p = LinkObjective(
      Formulate(net, kind),
      ParseObjectiveSpec("y[0]", ObjectiveSense::kMaximize));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Solve(p));
  }
}
BENCHMARK(BM_SolveMilp)
    ->Arg(static_cast<int>(FormulationType::kReluBigM))
    ->Arg(static_cast<int>(FormulationType::kReluPartition));

void BM_EmitLp(benchmark::State& state) {
  const OptProblem p = Formulate(BenchNet(24), {FormulationType::kReluBigM, 2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(EmitLp(p));
  }
}
BENCHMARK(BM_EmitLp);

}  // namespace
}  // namespace surrogate

BENCHMARK_MAIN();
