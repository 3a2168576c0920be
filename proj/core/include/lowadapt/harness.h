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

// Experiment harness: exhaustive optima for small instances, run
// verification, and a seeded experiment runner writing CSV results.

#ifndef LOWADAPT_HARNESS_H_
#define LOWADAPT_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lowadapt/instances.h"
#include "lowadapt/maximizers.h"
#include "lowadapt/threshold.h"

namespace lowadapt {

// Library version string.
const char* Version();

inline constexpr int kBruteForceCap = 22;

struct BruteForceResult {
  double value = 0.0;
  ElementSet set;  // lexicographically least argmax, ascending
};

// Exhaustive search over the effective ground set. Throws CapacityError
// when it has more than kBruteForceCap elements.
BruteForceResult BruteForceOpt(const Instance& inst);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool ok() const;
  const Check* Find(const std::string& name) const;
};

// Feasibility, value re-evaluation (relative tolerance 1e-9), per-cell
// iteration bounds, the adaptivity ceiling for knapsack seq runs and the
// query ceiling for knapsack bin runs. Evaluations made here are not
// charged to any ledger.
VerifyReport VerifyRun(const Instance& inst, const RunResult& result);

// Budget, value re-evaluation and iteration bound of one kernel run. In
// test mode a run stopped by the value-condition budget also gets the
// leftover-good inequality (one extra batch on `ledger`).
VerifyReport VerifyThresh(const Problem& problem, const ThreshResult& result,
                          const ThreshParams& params, bool test_mode,
                          QueryLedger& ledger);

// Evaluates `sets` random feasible sets; returns a diagnostic for the
// first one with f(S) < -1e-9.
std::optional<std::string> ProbeNonnegative(const Instance& inst, int sets,
                                            std::uint64_t seed);

struct ObjectiveSpec {
  // "maxcut", "revenue", "movie", "coverage" or "modular".
  std::string kind = "maxcut";
  int n = 100;
  double p = 0.1;  // edge probability for generated graphs
  std::string graph_file;
  std::string tags_file;
  int tags = 20;
  double tag_density = 0.2;
  int genres = 5;
  MovieParams movie;
  int items = 50;
  double density = 0.1;
  std::vector<double> values;  // modular weights; random when empty
};

struct AlgorithmSpec {
  // "greedy", "sample_greedy", "par_knapsack", "par_knapsack_monotone" or
  // "par_cardinal".
  std::string name;
  std::string label;  // defaults to name
  double p = 0.9;     // sample_greedy
  ParKnapsackParams params;
};

struct ExperimentSpec {
  std::string id = "experiment";
  ObjectiveSpec objective;
  CostKind cost_model = CostKind::kUniform01;
  ConstraintKind constraint = ConstraintKind::kKnapsack;
  int cardinality = 0;
  double budget_fraction = 0.1;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::uint64_t> seeds;
  // "budget" (fraction, or k for cardinality) or "size" (n).
  std::string sweep_parameter = "budget";
  std::vector<double> sweep_values;
  std::string output;
  int workers = 1;
  // When false wall_ms is written as 0 so files are byte-identical.
  bool timing = true;
  int probe_sets = 1000;
  std::string source_json;  // JSON text this experiment was parsed from
};

// Throws ParseError / ContractError on malformed or invalid documents.
ExperimentSpec ParseExperimentSpec(const std::string& json_text,
                                   const std::string& source = "<spec>");
ExperimentSpec LoadExperimentSpec(const std::string& path);

// Instance of `spec` at one sweep point and seed.
Instance BuildInstance(const ExperimentSpec& spec, double sweep_value,
                       std::uint64_t seed);

// Runs one algorithm on an instance with a fresh ledger.
RunResult RunAlgorithm(const AlgorithmSpec& algorithm, const Instance& inst,
                       std::uint64_t seed, int workers = 1);

struct ResultRow {
  std::string experiment_id;
  std::string algorithm;
  std::uint64_t seed = 0;
  double sweep_value = 0.0;
  double value = 0.0;
  double cost = 0.0;
  std::int64_t rounds = 0;
  std::int64_t queries = 0;
  double wall_ms = 0.0;
  std::string winner;
  std::vector<double> trajectory;
};

inline constexpr const char* kCsvHeader =
    "experiment_id,algorithm,seed,sweep_value,value,cost,rounds,queries,"
    "wall_ms,winner";

std::string FormatResultsCsv(const std::vector<ResultRow>& rows);
std::string FormatTrajectoryCsv(const std::vector<ResultRow>& rows);

struct ExperimentReport {
  std::vector<ResultRow> rows;  // sorted by (algorithm, seed, sweep value)
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Runs every sweep point x seed x algorithm. With write_files, writes
// spec.output, spec.output + ".trajectory.csv" and spec.output + ".json".
// Throws ContractError when the nonnegativity probe fails.
ExperimentReport RunExperiment(const ExperimentSpec& spec,
                               bool write_files = true);

}  // namespace lowadapt

#endif  // LOWADAPT_HARNESS_H_
