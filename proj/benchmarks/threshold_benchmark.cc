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
#include <vector>

#include "benchmark/benchmark.h"
#include "lowadapt/instances.h"
#include "lowadapt/objectives.h"
#include "lowadapt/threshold.h"

namespace lowadapt {
namespace {

struct Fixture {
  explicit Fixture(int n)
      : f(std::make_shared<WeightedGraph>(GenErdosRenyi(n, 0.1, 11))),
        costs(AssignCosts(CostKind::kUniform01, n, 0.15, 11)) {
    for (int v : costs.ground) x.push_back(v);
  }
  CutFunction f;
  CostModel costs;
  std::vector<ElementId> x;
};

template <bool kBinary>
void BM_Thresh(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  const Problem problem{&fx.f, fx.costs.costs, fx.costs.budget};
  ThreshParams params;
  params.tau = 2.0;
  params.epsilon = 0.125;
  params.ell = 8;
  std::int64_t queries = 0;
  std::uint64_t i = 0;
  for (auto _ : state) {
    QueryLedger ledger;
    Rng rng = Rng(++i).Derive(Stream::kTrial);
    const ThreshResult r =
        kBinary ? ThreshBin(problem, fx.x, params, ledger, rng)
                : ThreshSeq(problem, fx.x, params, ledger, rng);
    queries += r.queries;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["queries"] = benchmark::Counter(
      static_cast<double>(queries), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Thresh<false>)->Name("BM_ThreshSeq")->Arg(256)->Arg(1024);
BENCHMARK(BM_Thresh<true>)->Name("BM_ThreshBin")->Arg(256)->Arg(1024);

}  // namespace
}  // namespace lowadapt
