// Copyright 2026 The lowadapt Authors.
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

#include <memory>

#include "benchmark/benchmark.h"
#include "lowadapt/baselines.h"
#include "lowadapt/instances.h"
#include "lowadapt/maximizers.h"
#include "lowadapt/objectives.h"

namespace lowadapt {
namespace {

Instance CutInstance(int n) {
  auto f = std::make_shared<CutFunction>(
      std::make_shared<WeightedGraph>(GenErdosRenyi(n, 0.1, 5)));
  return MakeKnapsackInstance(f, AssignCosts(CostKind::kUniform01, n, 0.15, 5));
}

void BM_LazyGreedy(benchmark::State& state) {
  const Instance inst = CutInstance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    QueryLedger ledger;
    benchmark::DoNotOptimize(Greedy(inst, ledger).value);
  }
}
BENCHMARK(BM_LazyGreedy)->Arg(300)->Arg(1000);

void BM_ParKnapsack(benchmark::State& state) {
  const Instance inst = CutInstance(static_cast<int>(state.range(0)));
  ParKnapsackParams params;
  params.record_cells = false;
  std::uint64_t i = 0;
  for (auto _ : state) {
    QueryLedger ledger;
    Rng rng(++i);
    benchmark::DoNotOptimize(ParKnapsack(inst, params, ledger, rng).value);
  }
}
BENCHMARK(BM_ParKnapsack)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lowadapt
