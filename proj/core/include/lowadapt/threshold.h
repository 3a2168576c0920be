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

// Threshold kernels: random feasible sequences, threshold-sequence
// selection with cost and value stopping rules (linear and binary-search
// variants) and one-round unconstrained maximization.

#ifndef LOWADAPT_THRESHOLD_H_
#define LOWADAPT_THRESHOLD_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lowadapt/oracle.h"
#include "lowadapt/rng.h"

namespace lowadapt {

// Objective, additive costs and budget seen by a kernel. The budget may be
// smaller than the instance budget.
struct Problem {
  const SetFunction* f = nullptr;
  std::span<const double> costs;
  double budget = 0.0;
};

// Random sequence of elements of X, each drawn uniformly from the elements
// still fitting next to S and the prefix drawn so far. Issues no queries.
// Throws ContractError if c(S) > B, some x in X does not fit next to S,
// or S and X intersect.
ElementSet SampleSeq(const Problem& problem, std::span<const ElementId> s,
                     std::span<const ElementId> x, Rng& rng);

// Aggregates for one prefix A_i of a sampled sequence.
struct PrefixRow {
  double cost = 0.0;           // c(S + A_i)
  double value = 0.0;          // f(S + A_i)
  double head_gain = 0.0;      // f(a_i | S + A_{i-1})
  double good_cost = 0.0;      // c(G_i)
  double good_gain = 0.0;      // sum of f(x | S + A_i) over G_i
  int feasible = 0;            // |X_i|
  int good = 0;                // |G_i|
  double negative_mass = 0.0;  // sum of |f(x | S + A_i)| over E_i in X_i
  // sum over every x in X \ A_i with a negative marginal.
  double negative_mass_all = 0.0;
  // sum of |f(a_t | S + A_{t-1})| over t <= i with a negative head gain.
  double prefix_negative_mass = 0.0;
};

struct PrefixTable {
  ElementSet sequence;
  std::vector<PrefixRow> rows;  // rows[i - 1] describes A_i
  double candidate_cost = 0.0;  // c(X)
};

enum class ValueRule {
  // E_i restricted to X_i.
  kSequential,
  // E_i over X \ A_i plus the negative head gains of the prefix.
  kBinary,
};

// Cost condition of row i (1-based): c(G_i) <= (1 - eps) c(X).
bool CostCondition(const PrefixTable& table, int i, double eps);
// Value condition of row i (1-based) under `rule`.
bool ValueCondition(const PrefixTable& table, int i, double eps,
                    ValueRule rule);

struct KStar {
  int i_star = 0;
  std::optional<int> j_star;  // nullopt: never triggered
  int k_star = 0;
  bool value_triggered() const { return j_star && *j_star < i_star; }
};

// Linear scan. With value_enabled == false j* is never set.
// Throws ContractError on an empty table.
KStar FindKStar(const PrefixTable& table, double eps, bool value_enabled,
                ValueRule rule = ValueRule::kSequential);

struct ProbeOutcome {
  bool cost = false;
  bool value = false;
};

struct BinarySearchResult {
  int k_star = 0;
  bool value_triggered = false;  // c2 and not c1 at k*
  std::vector<int> probed;
};

// Smallest i in [1, d] with c1 or c2, assuming both are monotone in i and
// that c1 holds at d (which is then left unprobed).
BinarySearchResult BinarySearchKStar(
    int d, const std::function<ProbeOutcome(int)>& probe);

// c1 and c2 (binary rule) each switch from false to true at most once.
bool CheckBinMonotonicity(const PrefixTable& table, double eps,
                          bool value_enabled);

// Full table for S (given as an evaluation state with its cost and known
// value) and a sequence over X. Every row is computed, including the
// marginals outside X_i needed by the binary rule. Issues one batch on
// `ledger` when given.
PrefixTable BuildPrefixTable(const Problem& problem, const EvalState& s,
                             double s_cost, double s_value,
                             std::span<const ElementId> x,
                             std::span<const ElementId> sequence, double tau,
                             QueryLedger* ledger = nullptr);

enum class Trigger { kCost, kValue, kExhausted };
const char* TriggerName(Trigger t);

struct IterationTrace {
  int k_star = 0;
  Trigger trigger = Trigger::kCost;
  int sequence_length = 0;
  int candidates = 0;  // |X| entering the iteration
  int good_after = 0;  // |G_{k*}|
  int probes = 0;      // binary variant only
};

struct ThreshParams {
  double tau = 0.0;
  double epsilon = 0.1;
  // Value-condition budget; nullopt disables the value condition.
  std::optional<std::int64_t> ell;
};

struct ThreshResult {
  ElementSet solution;     // returned set (S-bar for the binary variant)
  ElementSet preliminary;  // S in its induced order
  double value = 0.0;      // f(solution)
  double preliminary_value = 0.0;
  double cost = 0.0;
  std::int64_t ctr = 0;
  int iterations = 0;
  std::int64_t iteration_bound = 0;
  std::vector<IterationTrace> trace;
  ElementSet filtered;  // X after the initial density filter
  std::int64_t rounds = 0;
  std::int64_t queries = 0;
  // (rounds since start, f(S)) after each step that learns f(S).
  std::vector<std::pair<std::int64_t, double>> trajectory;
};

// ceil((1/eps) ln(|X| kappa(X))) + ell + 1, with kappa the max/min cost
// ratio over X and ell counted as 0 when disabled.
std::int64_t IterationBound(std::span<const double> costs,
                            std::span<const ElementId> x, double eps,
                            std::optional<std::int64_t> ell);

// Throws ContractError for tau <= 0, eps outside (0, 1), or ell < 1;
// NumericError on a non-finite answer; InvariantViolation if the result
// is infeasible or the loop exceeds IterationBound.
ThreshResult ThreshSeq(const Problem& problem, std::span<const ElementId> x,
                       const ThreshParams& params, QueryLedger& ledger,
                       Rng& rng);

// Binary-search variant followed by one filtering round. Additionally
// asserts c(S-bar) <= c(S), f(S-bar) >= f(S) and the round ceiling
// 4 ceil(log2(|X| + 1)) IterationBound.
ThreshResult ThreshBin(const Problem& problem, std::span<const ElementId> x,
                       const ThreshParams& params, QueryLedger& ledger,
                       Rng& rng);

// Per-run assertion tallies across the process.
struct AuditCounts {
  std::int64_t runs_checked = 0;
  std::int64_t violations = 0;
};
AuditCounts ThreshAudit();
void ResetThreshAudit();

// f(S) against eps * ell * sum over G of f(x | S), G the elements of the
// filtered input outside S that fit next to S and have density >= tau.
// One batch.
struct LeftoverCheck {
  double value = 0.0;
  double good_mass = 0.0;
  double rhs = 0.0;
  bool holds = true;
};
LeftoverCheck CheckLeftoverGood(const Problem& problem,
                                const ThreshResult& result,
                                const ThreshParams& params,
                                QueryLedger& ledger);

// ceil((1/eps) ln(1/eps)), at least 1.
int SubmodMaxRepetitions(double eps);

struct SubmodMaxResult {
  ElementSet solution;
  double value = 0.0;
  // Values of the random halves R_j.
  std::vector<double> sample_values;
  double best_singleton_value = 0.0;
  double empty_value = 0.0;
};

// Best of the empty set, the best singleton and `repetitions` random
// halves of `pool`, all evaluated in one round. Ties prefer smaller cost
// (when costs are given) and then the lexicographically smaller set.
SubmodMaxResult SubmodMax(const SetFunction& f,
                          std::span<const ElementId> pool, int repetitions,
                          QueryLedger& ledger, Rng& rng,
                          std::span<const double> costs = {});

// Argmax helper shared with the maximizers: larger value, then smaller
// cost, then lexicographically smaller sorted set.
bool BetterCandidate(double value_a, double cost_a,
                     std::span<const ElementId> a, double value_b,
                     double cost_b, std::span<const ElementId> b);

}  // namespace lowadapt

#endif  // LOWADAPT_THRESHOLD_H_
