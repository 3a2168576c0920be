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

// Problem instances: synthetic generators, file loaders, and cost models.

#ifndef LOWADAPT_INSTANCES_H_
#define LOWADAPT_INSTANCES_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lowadapt/objectives.h"
#include "lowadapt/oracle.h"

namespace lowadapt {

enum class ConstraintKind { kKnapsack, kCardinality };

enum class CostKind { kUniform01, kIncidentWeight, kUnit };

// Parses "uniform01", "incident", "unit". Throws ContractError otherwise.
CostKind ParseCostKind(const std::string& name);
std::string CostKindName(CostKind kind);

struct CostModel {
  CostKind kind = CostKind::kUnit;
  double budget_fraction = 1.0;
  std::vector<double> costs;  // indexed by element id
  double budget = 0.0;
  // Elements with c(x) <= budget, ascending.
  ElementSet ground;
  int dropped = 0;
};

// A knapsack or cardinality-constrained maximization problem over the
// effective ground set `ground`. For cardinality instances costs are all 1
// and budget == cardinality.
struct Instance {
  std::shared_ptr<const SetFunction> objective;
  std::vector<double> costs;
  double budget = 0.0;
  ElementSet ground;
  ConstraintKind constraint = ConstraintKind::kKnapsack;
  int cardinality = 0;

  int n() const { return objective->ground_size(); }
  double Cost(std::span<const ElementId> set) const;
  // c(S) <= B (with a 1e-12 relative slack for summation order) or
  // |S| <= k, and S inside the effective ground set.
  bool Feasible(std::span<const ElementId> set) const;
  // Throws ContractError on inconsistent sizes, nonpositive costs or an
  // element of `ground` whose cost exceeds the budget.
  void Validate() const;
};

// Each unordered pair present independently with probability p; weights
// uniform on [0, 1).
WeightedGraph GenErdosRenyi(int n, double p, std::uint64_t seed);

// Inverse-CDF Lomax sample lambda * ((1 - u)^(-1/alpha) - 1). Throws
// ContractError for u outside [0, 1) or nonpositive parameters.
double SampleLomax(double lambda, double alpha, double u);

// c(x) by kind, then B = fraction * sum c and elements with c(x) > B are
// dropped. kIncidentWeight needs `graph`; its costs are proportional to
// weighted degree and normalized to sum to n. Vertices of zero weighted
// degree receive the smallest positive degree before normalization.
// Throws EmptyInstanceError if every element is dropped.
CostModel AssignCosts(CostKind kind, int n, double budget_fraction,
                      std::uint64_t seed, const WeightedGraph* graph = nullptr);

Instance MakeKnapsackInstance(std::shared_ptr<const SetFunction> objective,
                              const CostModel& costs);
// Throws ContractError unless 0 <= k <= n.
Instance MakeCardinalityInstance(std::shared_ptr<const SetFunction> objective,
                                 int k);

// Random movie instance: `tags` tag scores per movie, each nonzero with
// probability tag_density and uniform on [0, 1) when present; one of
// `genres` genres per movie; ratings uniform on [0, 5).
struct MovieGenParams {
  int n = 50;
  int tags = 20;
  double tag_density = 0.2;
  int genres = 5;
  MovieParams params;
};
MovieInstance GenMovieInstance(const MovieGenParams& gen, std::uint64_t seed);

// G(n, p) social network with Lomax(1, 2) suggestibility.
RevenueInstance GenRevenueInstance(int n, double p, std::uint64_t seed);

// Each element covers each of `items` items with probability `density`;
// item weights uniform on [0, 1).
CoverageInstance GenCoverageInstance(int n, int items, double density,
                                     std::uint64_t seed);

// Edge list "u,v[,w]" with '#' comments and blank lines allowed. Vertex
// ids are remapped densely in ascending order of the original ids and
// duplicate unordered pairs are summed. Files ending in ".gz" are
// decompressed. Throws ParseError with the offending line.
WeightedGraph LoadGraphCsv(const std::string& path);
void WriteGraphCsv(const std::string& path, const WeightedGraph& graph);

struct TagMatrix {
  std::vector<std::int64_t> movie_ids;  // original ids, ascending
  std::vector<std::int64_t> tag_ids;    // original ids, ascending
  std::vector<std::vector<double>> rows;
  int clamped = 0;  // scores moved into [0, 1]
};

// Rows "movie_id,tag_id,score" with an optional header line. Missing
// scores are 0. Throws ParseError on a malformed row or an empty file.
TagMatrix LoadTagMatrix(const std::string& path);

}  // namespace lowadapt

#endif  // LOWADAPT_INSTANCES_H_
