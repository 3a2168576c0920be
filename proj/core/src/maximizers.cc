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

#include "lowadapt/maximizers.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "lowadapt/errors.h"
#include "parallel.h"

namespace lowadapt {
namespace {

using Clock = std::chrono::steady_clock;

struct Candidate {
  ElementSet set;
  double value = 0.0;
  double cost = 0.0;
  Winner winner = Winner::kEmpty;
};

// (round since run start, value of a feasible set known at that round).
using Events = std::vector<std::pair<std::int64_t, double>>;

int CeilPositive(double v) {
  return std::max(0, static_cast<int>(std::ceil(v)));
}

double LnFloor(int n) { return std::max(1.0, std::log(std::max(n, 1))); }

void ApplyOverrides(const ParKnapsackParams& params, ResolvedParams& rp) {
  if (params.alpha) rp.alpha = *params.alpha;
  if (params.p) rp.p = *params.p;
  if (params.ell) rp.ell = *params.ell;
  if (params.repetitions) rp.repetitions = *params.repetitions;
  if (!(rp.alpha > 0.0 && rp.alpha < 1.0)) {
    throw ContractError("alpha must lie in (0, 1)");
  }
  if (!(rp.p > 0.0 && rp.p <= 1.0)) {
    throw ContractError("p must lie in (0, 1]");
  }
  if (rp.ell && *rp.ell < 1) throw ContractError("ell must be >= 1");
  if (rp.repetitions < 1) throw ContractError("repetitions must be >= 1");
}

void CheckEpsilon(double eps, double upper, const char* who) {
  if (!(eps > 0.0 && eps < upper)) {
    std::ostringstream msg;
    msg << who << ": epsilon must lie in (0, " << upper << ")";
    throw ContractError(msg.str());
  }
}

std::int64_t CeilSquareInverse(double eps_hat) {
  return static_cast<std::int64_t>(std::ceil(1.0 / (eps_hat * eps_hat)));
}

ResolvedParams ResolveCommon(const ParKnapsackParams& params, int n,
                             double theory_divisor, double alpha,
                             bool value_condition) {
  ResolvedParams rp;
  rp.epsilon = params.epsilon;
  rp.mode = params.mode;
  rp.variant = params.variant;
  rp.alpha = alpha;
  const bool theory = params.mode == Mode::kTheoretical;
  rp.eps_hat = theory ? params.epsilon / theory_divisor : params.epsilon;
  const double inv = 1.0 / rp.eps_hat;
  if (value_condition) {
    rp.ell = theory ? CeilSquareInverse(rp.eps_hat)
                    : std::min<std::int64_t>(CeilSquareInverse(rp.eps_hat), 64);
  }
  rp.thresholds = CeilPositive(inv * std::log(std::max(n, 1)));
  rp.repetitions = theory ? std::max(1, CeilPositive(inv * std::log(inv))) : 4;
  rp.submod_repetitions = SubmodMaxRepetitions(rp.eps_hat);
  rp.p = theory ? (1.0 - alpha) / 2.0 : 0.9;
  return rp;
}

ThreshResult RunKernel(Variant variant, const Problem& problem,
                       std::span<const ElementId> pool,
                       const ThreshParams& params, QueryLedger& ledger,
                       Rng& rng) {
  return variant == Variant::kSeq
             ? ThreshSeq(problem, pool, params, ledger, rng)
             : ThreshBin(problem, pool, params, ledger, rng);
}

struct SingletonScan {
  double empty_value = 0.0;
  ElementId best = -1;
  double best_value = 0.0;
};

// f(empty) and f({x}) for x in pool as one batch.
SingletonScan ScanSingletons(const SetFunction& f,
                             std::span<const double> costs,
                             std::span<const ElementId> pool,
                             QueryLedger& ledger) {
  SingletonScan scan;
  auto state = f.NewState();
  scan.empty_value = state->Value();
  for (ElementId x : pool) {
    const double v = scan.empty_value + state->Gain(x);
    if (!std::isfinite(v)) {
      throw NumericError("singleton value is not finite at element " +
                         std::to_string(x));
    }
    if (scan.best < 0 || v > scan.best_value ||
        (v == scan.best_value &&
         (costs[x] < costs[scan.best] ||
          (costs[x] == costs[scan.best] && x < scan.best)))) {
      scan.best = x;
      scan.best_value = v;
    }
  }
  ledger.Charge(1 + static_cast<std::int64_t>(pool.size()));
  return scan;
}

ElementSet SampleSubset(std::span<const ElementId> pool, double p, Rng rng) {
  ElementSet out;
  for (ElementId x : pool) {
    if (rng.Bernoulli(p)) out.push_back(x);
  }
  return out;
}

struct GridOutcome {
  std::vector<Candidate> candidates;  // row-major (i, j)
  std::vector<CellSummary> cells;
  Events events;                      // relative to the grid start
};

// Runs the (thresholds + 1) x repetitions grid, threshold i on
// branches[i], each forked into `repetitions` cells.
GridOutcome RunGrid(const Problem& problem, std::span<const ElementId> pool,
                    double tau_hat, const ResolvedParams& rp,
                    std::span<QueryLedger> branches, const Rng& rng,
                    int workers, bool record_cells) {
  const int rows = rp.thresholds + 1;
  const int reps = rp.repetitions;
  std::vector<std::vector<QueryLedger>> cells_ledgers;
  cells_ledgers.reserve(rows);
  for (int i = 0; i < rows; ++i) cells_ledgers.push_back(branches[i].Fork(reps));

  const std::size_t total = std::size_t(rows) * reps;
  std::vector<ThreshResult> results(total);
  std::vector<double> taus(rows);
  for (int i = 0; i < rows; ++i) {
    taus[i] = tau_hat * std::pow(1.0 - rp.eps_hat, i);
  }
  internal::ParallelFor(total, workers, [&](std::size_t t) {
    const int i = static_cast<int>(t / reps);
    const int j = static_cast<int>(t % reps);
    ThreshParams tp;
    tp.tau = taus[i];
    tp.epsilon = rp.eps_hat;
    tp.ell = rp.ell;
    Rng cell = rng.Derive(Stream::kCell, i, j);
    results[t] = RunKernel(rp.variant, problem, pool, tp, cells_ledgers[i][j],
                           cell);
  });
  for (int i = 0; i < rows; ++i) branches[i].Join(cells_ledgers[i]);

  GridOutcome out;
  out.candidates.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    ThreshResult& r = results[t];
    const int i = static_cast<int>(t / reps);
    const int j = static_cast<int>(t % reps);
    for (const auto& e : r.trajectory) out.events.push_back(e);
    if (record_cells) {
      CellSummary c;
      c.i = i;
      c.j = j;
      c.tau = taus[i];
      c.input_size = static_cast<int>(pool.size());
      c.filtered = static_cast<int>(r.filtered.size());
      c.iterations = r.iterations;
      c.iteration_bound = r.iteration_bound;
      c.ctr = r.ctr;
      c.value = r.value;
      c.cost = r.cost;
      c.rounds = r.rounds;
      c.queries = r.queries;
      c.solution = r.solution;
      out.cells.push_back(std::move(c));
    }
    out.candidates.push_back(
        {std::move(r.solution), r.value, r.cost, Winner::kGrid});
  }
  return out;
}

std::vector<double> BuildTrajectory(Events events, std::int64_t rounds) {
  std::sort(events.begin(), events.end());
  std::vector<double> best(std::max<std::int64_t>(rounds, 0),
                           -std::numeric_limits<double>::infinity());
  double running = -std::numeric_limits<double>::infinity();
  std::size_t e = 0;
  for (std::int64_t r = 1; r <= rounds; ++r) {
    while (e < events.size() && events[e].first <= r) {
      running = std::max(running, events[e].second);
      ++e;
    }
    best[r - 1] = running;
  }
  return best;
}

void Finish(const Instance& inst, std::vector<Candidate>& candidates,
            QueryLedger& ledger, std::int64_t r0, std::int64_t q0,
            Clock::time_point start, Events events, RunResult& out) {
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (best == nullptr || BetterCandidate(c.value, c.cost, c.set, best->value,
                                           best->cost, best->set)) {
      best = &c;
    }
  }
  out.solution = best->set;
  out.value = best->value;
  out.cost = best->cost;
  out.winner = best->winner;
  out.rounds = ledger.rounds() - r0;
  out.queries = ledger.queries() - q0;
  out.trajectory = BuildTrajectory(std::move(events), out.rounds);
  out.feasible = inst.Feasible(out.solution);
  out.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (!out.feasible) {
    throw InvariantViolation("maximizer returned an infeasible solution");
  }
}

void RequireNonEmpty(const Instance& inst, const char* who) {
  inst.Validate();
  if (inst.ground.empty()) {
    throw EmptyInstanceError(std::string(who) + ": empty ground set");
  }
}

}  // namespace

Mode ParseMode(const std::string& name) {
  if (name == "theoretical") return Mode::kTheoretical;
  if (name == "practical") return Mode::kPractical;
  throw ContractError("unknown mode '" + name + "'");
}

Variant ParseVariant(const std::string& name) {
  if (name == "seq") return Variant::kSeq;
  if (name == "bin") return Variant::kBin;
  throw ContractError("unknown variant '" + name + "'");
}

std::string ModeName(Mode mode) {
  return mode == Mode::kTheoretical ? "theoretical" : "practical";
}

std::string VariantName(Variant variant) {
  return variant == Variant::kSeq ? "seq" : "bin";
}

const char* WinnerName(Winner w) {
  switch (w) {
    case Winner::kGrid:
      return "grid";
    case Winner::kSingleton:
      return "singleton";
    case Winner::kSmall:
      return "small";
    case Winner::kEmpty:
      return "empty";
    case Winner::kBaseline:
      return "baseline";
  }
  return "unknown";
}

ResolvedParams ResolveKnapsack(const ParKnapsackParams& params, int n) {
  CheckEpsilon(params.epsilon, 1.0 / 3.0, "ParKnapsack");
  ResolvedParams rp =
      ResolveCommon(params, n, 125.0, 2.0 - std::sqrt(3.0), true);
  ApplyOverrides(params, rp);
  return rp;
}

ResolvedParams ResolveMonotone(const ParKnapsackParams& params, int n) {
  CheckEpsilon(params.epsilon, 1.0, "ParKnapsackMonotone");
  ResolvedParams rp = ResolveCommon(params, n, 10.0, 2.0 / 3.0, false);
  rp.p = 1.0;
  ApplyOverrides(params, rp);
  return rp;
}

ResolvedParams ResolveCardinal(const ParKnapsackParams& params, int n) {
  CheckEpsilon(params.epsilon, 0.4, "ParCardinal");
  ResolvedParams rp =
      ResolveCommon(params, n, 70.0, 3.0 - 2.0 * std::sqrt(2.0), true);
  ApplyOverrides(params, rp);
  return rp;
}

std::int64_t AdaptivityCeiling(const ResolvedParams& params, int n) {
  const double lead = 4.0 / params.eps_hat * std::log(std::max(n, 1));
  return static_cast<std::int64_t>(std::floor(lead)) + params.ell.value_or(0) +
         5;
}

double QueryCeiling(const ResolvedParams& params, int n) {
  const double l = LnFloor(n);
  return kQueryCeilingConstant * (n / std::pow(params.eps_hat, 3)) * l * l *
         l * std::log(1.0 / params.eps_hat);
}

RunResult ParKnapsack(const Instance& inst, const ParKnapsackParams& params,
                      QueryLedger& ledger, Rng& rng) {
  const auto start = Clock::now();
  if (inst.constraint != ConstraintKind::kKnapsack) {
    throw ContractError("ParKnapsack: knapsack instance required");
  }
  RequireNonEmpty(inst, "ParKnapsack");
  const int n = static_cast<int>(inst.ground.size());
  RunResult out;
  out.algorithm = "par_knapsack";
  out.params = ResolveKnapsack(params, n);
  const ResolvedParams& rp = out.params;
  const SetFunction& f = *inst.objective;
  const double budget = inst.budget;
  const std::int64_t r0 = ledger.rounds();
  const std::int64_t q0 = ledger.queries();

  ElementSet large;
  for (ElementId x : inst.ground) {
    (inst.costs[x] < budget / n ? out.small : large).push_back(x);
  }
  out.singleton_fallback = large.empty();
  const SingletonScan scan = ScanSingletons(
      f, inst.costs, out.singleton_fallback ? inst.ground : large, ledger);
  Events events{{ledger.rounds() - r0, scan.empty_value},
                {ledger.rounds() - r0, scan.best_value}};
  std::vector<Candidate> candidates{
      {{}, scan.empty_value, 0.0, Winner::kEmpty},
      {{scan.best}, scan.best_value, inst.costs[scan.best],
       Winner::kSingleton}};

  out.grid_skipped = !(scan.best_value > 0.0);
  const std::int64_t fork_round = ledger.rounds() - r0;
  const int grid_rows = out.grid_skipped ? 0 : rp.thresholds + 1;
  std::vector<QueryLedger> branches = ledger.Fork(1 + grid_rows);
  if (!out.small.empty()) {
    Rng small_rng = rng.Derive(Stream::kSmallElements);
    SubmodMaxResult sm = SubmodMax(f, out.small, rp.submod_repetitions,
                                   branches[0], small_rng, inst.costs);
    const double c = inst.Cost(sm.solution);
    events.emplace_back(fork_round + 1, sm.value);
    candidates.push_back({std::move(sm.solution), sm.value, c, Winner::kSmall});
  }
  if (!out.grid_skipped) {
    const double tau_hat = rp.alpha * n * scan.best_value / budget;
    out.sample = SampleSubset(large, rp.p, rng.Derive(Stream::kSample));
    const Problem problem{&f, inst.costs, budget};
    GridOutcome grid = RunGrid(
        problem, out.sample, tau_hat, rp,
        std::span<QueryLedger>(branches).subspan(1), rng, params.workers,
        params.record_cells);
    for (const auto& e : grid.events) {
      events.emplace_back(fork_round + e.first, e.second);
    }
    for (auto& c : grid.candidates) candidates.push_back(std::move(c));
    out.cells = std::move(grid.cells);
  }
  ledger.Join(branches);
  Finish(inst, candidates, ledger, r0, q0, start, std::move(events), out);

  if (rp.mode == Mode::kTheoretical && rp.variant == Variant::kSeq &&
      out.rounds > AdaptivityCeiling(rp, n)) {
    throw InvariantViolation("ParKnapsack: " + std::to_string(out.rounds) +
                             " rounds exceed the adaptivity ceiling " +
                             std::to_string(AdaptivityCeiling(rp, n)));
  }
  if (rp.variant == Variant::kBin &&
      static_cast<double>(out.queries) > QueryCeiling(rp, n)) {
    throw InvariantViolation("ParKnapsack: " + std::to_string(out.queries) +
                             " queries exceed the query ceiling");
  }
  return out;
}

RunResult ParKnapsackMonotone(const Instance& inst,
                              const ParKnapsackParams& params,
                              QueryLedger& ledger, Rng& rng) {
  const auto start = Clock::now();
  if (inst.constraint != ConstraintKind::kKnapsack) {
    throw ContractError("ParKnapsackMonotone: knapsack instance required");
  }
  RequireNonEmpty(inst, "ParKnapsackMonotone");
  const int n = static_cast<int>(inst.ground.size());
  RunResult out;
  out.algorithm = "par_knapsack_monotone";
  out.params = ResolveMonotone(params, n);
  const ResolvedParams& rp = out.params;
  const SetFunction& f = *inst.objective;
  const double budget = inst.budget;

  if (params.verify_monotone) {
    const auto violation = FindNegativeMarginal(
        f, 10000, rng.Derive(Stream::kProbe).Next());
    if (violation) {
      std::ostringstream msg;
      msg << "ParKnapsackMonotone: objective is not monotone: f("
          << violation->element << " | {";
      for (std::size_t i = 0; i < violation->set.size(); ++i) {
        msg << (i ? "," : "") << violation->set[i];
      }
      msg << "}) = " << violation->gain;
      throw ContractError(msg.str());
    }
  }

  const std::int64_t r0 = ledger.rounds();
  const std::int64_t q0 = ledger.queries();
  ElementSet large;
  for (ElementId x : inst.ground) {
    (inst.costs[x] < rp.eps_hat * budget / n ? out.small : large).push_back(x);
  }
  const double small_cost = inst.Cost(out.small);
  const SingletonScan scan = ScanSingletons(f, inst.costs, inst.ground, ledger);
  Events events{{ledger.rounds() - r0, scan.empty_value},
                {ledger.rounds() - r0, scan.best_value}};
  std::vector<Candidate> candidates{
      {{}, scan.empty_value, 0.0, Winner::kEmpty},
      {{scan.best}, scan.best_value, inst.costs[scan.best],
       Winner::kSingleton}};

  out.grid_skipped = !(scan.best_value > 0.0);
  if (!out.grid_skipped) {
    out.sample = large;
    const double tau_hat = rp.alpha * n * scan.best_value / budget;
    const Problem problem{&f, inst.costs, (1.0 - rp.eps_hat) * budget};
    const std::int64_t fork_round = ledger.rounds() - r0;
    std::vector<QueryLedger> branches = ledger.Fork(rp.thresholds + 1);
    GridOutcome grid = RunGrid(problem, large, tau_hat, rp, branches, rng,
                               params.workers, params.record_cells);
    ledger.Join(branches);
    for (const auto& e : grid.events) {
      events.emplace_back(fork_round + e.first, e.second);
    }
    // T_ij = S_ij + N_-, evaluated together when N_- is nonempty.
    if (!out.small.empty()) {
      QueryBatch batch;
      for (auto& c : grid.candidates) {
        c.set.insert(c.set.end(), out.small.begin(), out.small.end());
        c.cost += small_cost;
        batch.push_back(c.set);
      }
      const std::vector<double> values = EvaluateBatch(ledger, f, batch);
      for (std::size_t t = 0; t < values.size(); ++t) {
        grid.candidates[t].value = values[t];
        events.emplace_back(ledger.rounds() - r0, values[t]);
      }
      for (auto& cell : grid.cells) {
        cell.value = values[std::size_t(cell.i) * rp.repetitions + cell.j];
        cell.cost += small_cost;
        cell.solution = grid.candidates[std::size_t(cell.i) * rp.repetitions +
                                        cell.j].set;
      }
    }
    for (auto& c : grid.candidates) candidates.push_back(std::move(c));
    out.cells = std::move(grid.cells);
  }
  Finish(inst, candidates, ledger, r0, q0, start, std::move(events), out);
  return out;
}

RunResult ParCardinal(const Instance& inst, const ParKnapsackParams& params,
                      QueryLedger& ledger, Rng& rng) {
  const auto start = Clock::now();
  if (inst.constraint != ConstraintKind::kCardinality) {
    throw ContractError("ParCardinal: cardinality instance required");
  }
  inst.Validate();
  const int n = inst.n();
  RunResult out;
  out.algorithm = "par_cardinal";
  out.params = ResolveCardinal(params, n);
  const ResolvedParams& rp = out.params;
  const SetFunction& f = *inst.objective;
  const std::int64_t r0 = ledger.rounds();
  const std::int64_t q0 = ledger.queries();

  if (inst.cardinality == 0) {
    const double empty = EvaluateBatch(ledger, f, {{}})[0];
    std::vector<Candidate> candidates{{{}, empty, 0.0, Winner::kEmpty}};
    out.grid_skipped = true;
    Finish(inst, candidates, ledger, r0, q0, start, {{1, empty}}, out);
    return out;
  }
  const int k = inst.cardinality;
  const SingletonScan scan = ScanSingletons(f, inst.costs, inst.ground, ledger);
  Events events{{ledger.rounds() - r0, scan.empty_value},
                {ledger.rounds() - r0, scan.best_value}};
  std::vector<Candidate> candidates{
      {{}, scan.empty_value, 0.0, Winner::kEmpty},
      {{scan.best}, scan.best_value, 1.0, Winner::kSingleton}};

  out.grid_skipped = !(scan.best_value > 0.0);
  if (!out.grid_skipped) {
    const double tau_hat = rp.alpha * n * scan.best_value / k;
    out.sample = SampleSubset(inst.ground, rp.p, rng.Derive(Stream::kSample));
    const Problem problem{&f, inst.costs, static_cast<double>(k)};
    const std::int64_t fork_round = ledger.rounds() - r0;
    std::vector<QueryLedger> branches = ledger.Fork(rp.thresholds + 1);
    GridOutcome grid = RunGrid(problem, out.sample, tau_hat, rp, branches,
                               rng, params.workers, params.record_cells);
    ledger.Join(branches);
    for (const auto& e : grid.events) {
      events.emplace_back(fork_round + e.first, e.second);
    }
    for (auto& c : grid.candidates) candidates.push_back(std::move(c));
    out.cells = std::move(grid.cells);
  }
  Finish(inst, candidates, ledger, r0, q0, start, std::move(events), out);
  return out;
}

RepeatResult RepeatUntilSmall(const Problem& problem,
                              std::span<const ElementId> pool,
                              const ThreshParams& params, int repetitions,
                              Variant variant, QueryLedger& ledger,
                              const Rng& rng, std::uint64_t index,
                              int workers) {
  if (repetitions < 1) {
    throw ContractError("RepeatUntilSmall: repetitions must be >= 1");
  }
  std::vector<QueryLedger> children = ledger.Fork(repetitions);
  RepeatResult out;
  out.runs.resize(repetitions);
  internal::ParallelFor(repetitions, workers, [&](std::size_t j) {
    Rng cell = rng.Derive(Stream::kCell, index, j);
    out.runs[j] = RunKernel(variant, problem, pool, params, children[j], cell);
  });
  ledger.Join(children);
  for (const auto& run : out.runs) {
    double c = 0.0;
    for (ElementId x : run.preliminary) c += problem.costs[x];
    if (c < problem.budget / 2.0) out.some_small = true;
  }
  return out;
}

}  // namespace lowadapt
