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

namespace lowadapt {
namespace {

std::shared_ptr<const WeightedGraph> Graph(int n) {
  return std::make_shared<WeightedGraph>(GenErdosRenyi(n, 0.1, 7));
}

void BM_CutGain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CutFunction f(Graph(n));
  auto s = f.NewState();
  for (int v = 0; v < n; v += 3) s->Insert(v);
  int x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s->Gain(x));
    x = (x + 3) % n;
  }
}
BENCHMARK(BM_CutGain)->Arg(256)->Arg(2048);

void BM_CutValueFromScratch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = Graph(n);
  std::vector<ElementId> set;
  for (int v = 0; v < n; v += 2) set.push_back(v);
  for (auto _ : state) benchmark::DoNotOptimize(CutValue(*g, set));
}
BENCHMARK(BM_CutValueFromScratch)->Arg(256)->Arg(2048);

void BM_MovieGain(benchmark::State& state) {
  MovieGenParams gen;
  gen.n = static_cast<int>(state.range(0));
  MovieFunction f(std::make_shared<MovieInstance>(GenMovieInstance(gen, 3)));
  auto s = f.NewState();
  for (int v = 0; v < gen.n; v += 5) s->Insert(v);
  int x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s->Gain(x));
    x = (x + 5) % gen.n;
  }
}
BENCHMARK(BM_MovieGain)->Arg(500);

}  // namespace
}  // namespace lowadapt
