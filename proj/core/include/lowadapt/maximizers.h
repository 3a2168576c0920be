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

// Constrained maximizers built from the threshold kernels: the knapsack
// algorithm for general submodular objectives, its monotone
// specialization, and the cardinality specialization.

#ifndef LOWADAPT_MAXIMIZERS_H_
#define LOWADAPT_MAXIMIZERS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowadapt/instances.h"
#include "lowadapt/oracle.h"
#include "lowadapt/rng.h"
#include "lowadapt/threshold.h"

namespace lowadapt {

// kTheoretical uses the constants of the approximation proofs;
// kPractical uses eps-hat = eps with small repetition and ell caps.
enum class Mode { kTheoretical, kPractical };
enum class Variant { kSeq, kBin };

Mode ParseMode(const std::string& name);
Variant ParseVariant(const std::string& name);
std::string ModeName(Mode mode);
std::string VariantName(Variant variant);

struct ParKnapsackParams {
  double epsilon = 0.125;
  Mode mode = Mode::kPractical;
  Variant variant = Variant::kSeq;
  // Overrides of the mode defaults.
  std::optional<double> alpha;
  std::optional<double> p;
  std::optional<std::int64_t> ell;
  std::optional<int> repetitions;
  int workers = 1;
  // Keep one CellSummary per grid cell.
  bool record_cells = true;
  // Monotone variant: probe for negative marginals before running.
  bool verify_monotone = true;
};

// Parameters after applying mode defaults and overrides.
struct ResolvedParams {
  double epsilon = 0.0;
  double eps_hat = 0.0;
  double alpha = 0.0;
  double p = 0.0;
  std::optional<std::int64_t> ell;  // nullopt: value condition disabled
  int thresholds = 0;               // grid indices 0..thresholds
  int repetitions = 0;
  int submod_repetitions = 0;
  Mode mode = Mode::kPractical;
  Variant variant = Variant::kSeq;
};

// `n` is the effective ground-set size. Throw ContractError when epsilon
// lies outside (0, 1/3), (0, 1) and (0, 2/5) respectively, or an override
// is out of range.
ResolvedParams ResolveKnapsack(const ParKnapsackParams& params, int n);
ResolvedParams ResolveMonotone(const ParKnapsackParams& params, int n);
ResolvedParams ResolveCardinal(const ParKnapsackParams& params, int n);

// kBaseline tags results of the sequential baselines.
enum class Winner { kGrid, kSingleton, kSmall, kEmpty, kBaseline };
const char* WinnerName(Winner w);

struct CellSummary {
  int i = 0;
  int j = 0;
  double tau = 0.0;
  int input_size = 0;  // |H| handed to the kernel
  int filtered = 0;    // after the density filter
  int iterations = 0;
  std::int64_t iteration_bound = 0;
  std::int64_t ctr = 0;
  double value = 0.0;
  double cost = 0.0;
  std::int64_t rounds = 0;
  std::int64_t queries = 0;
  ElementSet solution;
};

struct RunResult {
  // "par_knapsack", "par_knapsack_monotone", "par_cardinal", "greedy"
  // or "sample_greedy".
  std::string algorithm;
  ElementSet solution;
  double value = 0.0;
  double cost = 0.0;
  bool feasible = false;
  std::int64_t rounds = 0;
  std::int64_t queries = 0;
  Winner winner = Winner::kEmpty;
  double wall_ms = 0.0;
  // Best value known after each adaptive round, rounds 1..rounds.
  std::vector<double> trajectory;
  std::vector<CellSummary> cells;
  ResolvedParams params;
  // x* taken over the whole ground set because the large part was empty.
  bool singleton_fallback = false;
  // f(x*) <= 0: the threshold grid was skipped.
  bool grid_skipped = false;
  ElementSet small;   // N_-
  ElementSet sample;  // H
};

// Knapsack maximization for non-negative submodular objectives. Throws
// EmptyInstanceError on an empty effective ground set, ContractError for
// a cardinality instance, InvariantViolation if the result is infeasible,
// the seq variant in theoretical mode exceeds AdaptivityCeiling, or the
// bin variant exceeds QueryCeiling.
RunResult ParKnapsack(const Instance& inst, const ParKnapsackParams& params,
                      QueryLedger& ledger, Rng& rng);

// Monotone objectives. Throws ContractError naming the offending element
// and set when verify_monotone finds a negative marginal.
RunResult ParKnapsackMonotone(const Instance& inst,
                              const ParKnapsackParams& params,
                              QueryLedger& ledger, Rng& rng);

// Cardinality-constrained instances (unit costs, budget k).
RunResult ParCardinal(const Instance& inst, const ParKnapsackParams& params,
                      QueryLedger& ledger, Rng& rng);

// 4 (1/eps-hat) ln n + ell + 5.
std::int64_t AdaptivityCeiling(const ResolvedParams& params, int n);
inline constexpr double kQueryCeilingConstant = 1.0;
// kQueryCeilingConstant (n / eps-hat^3) L^3 ln(1/eps-hat), L = max(ln n, 1).
double QueryCeiling(const ResolvedParams& params, int n);

struct RepeatResult {
  std::vector<ThreshResult> runs;
  // Some run ended with c(S) < B / 2.
  bool some_small = false;
};

// `repetitions` independent kernel runs on one forked ledger each; run j
// draws from rng.Derive(Stream::kCell, index, j).
RepeatResult RepeatUntilSmall(const Problem& problem,
                              std::span<const ElementId> pool,
                              const ThreshParams& params, int repetitions,
                              Variant variant, QueryLedger& ledger,
                              const Rng& rng, std::uint64_t index = 0,
                              int workers = 1);

}  // namespace lowadapt

#endif  // LOWADAPT_MAXIMIZERS_H_
