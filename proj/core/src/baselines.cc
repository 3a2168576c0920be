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

#include "lowadapt/baselines.h"

#include <chrono>
#include <cmath>
#include <string>

#include "lowadapt/errors.h"

namespace lowadapt {
namespace {

using Clock = std::chrono::steady_clock;

enum class Order { kValue, kDensity };

double Key(Order order, double gain, double cost) {
  return order == Order::kValue ? gain : gain / cost;
}

double CheckedGain(double g, ElementId x) {
  if (!std::isfinite(g)) {
    throw NumericError("baseline: non-finite marginal at element " +
                       std::to_string(x));
  }
  return g;
}

RunResult LazyRun(const Instance& inst, Order order, double p,
                  QueryLedger& ledger, Rng* rng) {
  const auto start = Clock::now();
  inst.Validate();
  const SetFunction& f = *inst.objective;
  const std::int64_t r0 = ledger.rounds();
  const std::int64_t q0 = ledger.queries();
  const bool cardinality = inst.constraint == ConstraintKind::kCardinality;

  RunResult out;
  out.algorithm = rng == nullptr ? "greedy" : "sample_greedy";
  out.winner = Winner::kBaseline;
  auto state = f.NewState();
  double value = state->Value();
  LazyHeap heap;
  for (ElementId x : inst.ground) {
    const double g = CheckedGain(state->Gain(x), x);
    heap.Push({Key(order, g, inst.costs[x]), x, 0, g});
  }
  ledger.Charge(1 + static_cast<std::int64_t>(inst.ground.size()));
  out.trajectory.push_back(value);

  double used = 0.0;
  std::int64_t version = 0;
  auto fits = [&](ElementId x) {
    return cardinality ? version < inst.cardinality
                       : used + inst.costs[x] <= inst.budget;
  };
  while (!heap.empty()) {
    const LazyHeap::Entry top = heap.Top();
    heap.Pop();
    if (!fits(top.id)) continue;
    if (top.version != version) {
      const double g = CheckedGain(state->Gain(top.id), top.id);
      ledger.Charge(1);
      out.trajectory.push_back(value);
      heap.Push({Key(order, g, inst.costs[top.id]), top.id, version, g});
      continue;
    }
    if (!(top.key > 0.0)) break;
    if (rng != nullptr && !rng->Bernoulli(p)) continue;
    const double gain = top.gain;
    state->Insert(top.id);
    value += gain;
    used += inst.costs[top.id];
    out.solution.push_back(top.id);
    ++version;
    out.trajectory.back() = value;
  }

  out.value = value;
  out.cost = inst.Cost(out.solution);
  out.rounds = ledger.rounds() - r0;
  out.queries = ledger.queries() - q0;
  out.feasible = inst.Feasible(out.solution);
  out.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (!out.feasible) {
    throw InvariantViolation("baseline returned an infeasible solution");
  }
  return out;
}

}  // namespace

RunResult Greedy(const Instance& inst, QueryLedger& ledger) {
  return LazyRun(inst, Order::kValue, 1.0, ledger, nullptr);
}

RunResult SampleGreedy(const Instance& inst, double p, QueryLedger& ledger,
                       Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ContractError("SampleGreedy: p must lie in (0, 1]");
  }
  Rng draws = rng.Derive(Stream::kBaseline);
  return LazyRun(inst, Order::kDensity, p, ledger, &draws);
}

}  // namespace lowadapt
