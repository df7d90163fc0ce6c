// Copyright 2026 The restartkit Authors
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

#include "restartkit/linops.hpp"
#include "restartkit/problems.hpp"
#include "restartkit/rng.hpp"
#include "restartkit/schedule.hpp"
#include "restartkit/solvers.hpp"

namespace restartkit {
namespace {

Vec random_vector(Index n, std::uint64_t seed) {
  Rng rng(seed);
  return rng.complex_normal_vector(n);
}

void BM_Fft(benchmark::State& state) {
  const Index n = state.range(0);
  const Vec x = random_vector(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft_apply(x));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Fft)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

void BM_Fourier2dApply(benchmark::State& state) {
  const Index side = state.range(0);
  const auto mask = sample_mask(side * side, side * side / 8, MaskKind::kPowerDensity, 1);
  const auto op = make_fourier_operator_2d(side, mask);
  const Vec x = random_vector(side * side, 2);
  for (auto _ : state) benchmark::DoNotOptimize(op->adjoint(op->apply(x)));
}
BENCHMARK(BM_Fourier2dApply)->Arg(64)->Arg(128)->Arg(256);

void BM_PrimalDualIterations(benchmark::State& state) {
  const auto inst = gen_gaussian_qcbp(128, 60, 10, 1e-6, 1);
  const auto setup = qcbp_problem(inst);
  PdSteps steps = pd_step_sizes(*setup.solver, 1.0, 1e-2);
  steps.iterations = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pd_iterate(*setup.solver, steps, setup.initial_point, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrimalDualIterations)->Arg(100)->Arg(1000);

void BM_ScheduleClasses(benchmark::State& state) {
  ScheduleCriterion crit;
  crit.mode = ScheduleMode::kBothUnknown;
  for (auto _ : state) {
    AssignmentEnumerator phi(crit, AssignmentEnumerator::Strategy::kClasses);
    for (std::int64_t i = 0; i < state.range(0); ++i) benchmark::DoNotOptimize(phi.next_point());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScheduleClasses)->Arg(10000)->Arg(100000);

void BM_ScheduleMerge(benchmark::State& state) {
  ScheduleCriterion crit;
  crit.mode = ScheduleMode::kBothUnknown;
  crit.c1 = 1.5;
  crit.c2 = 2.5;
  for (auto _ : state) {
    AssignmentEnumerator phi(crit, AssignmentEnumerator::Strategy::kMerge);
    for (std::int64_t i = 0; i < state.range(0); ++i) benchmark::DoNotOptimize(phi.next_point());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScheduleMerge)->Arg(10000);

}  // namespace
}  // namespace restartkit

BENCHMARK_MAIN();
