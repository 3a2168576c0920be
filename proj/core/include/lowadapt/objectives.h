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

// Objective functions: weighted cut, movie recommendation (modified maximal
// marginal relevance), revenue maximization, plus modular and weighted
// coverage functions used as synthetic test objectives.

#ifndef LOWADAPT_OBJECTIVES_H_
#define LOWADAPT_OBJECTIVES_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lowadapt/oracle.h"

namespace lowadapt {

struct Edge {
  ElementId u = 0;
  ElementId v = 0;
  double w = 1.0;
};

// Undirected graph without self-loops or parallel edges; weights finite and
// nonnegative. Adjacency is stored in CSR form.
class WeightedGraph {
 public:
  struct Neighbor {
    ElementId v;
    double w;
  };

  WeightedGraph() = default;
  // Throws ContractError on a self-loop, an id out of range, a duplicate
  // unordered pair, or a negative / non-finite weight.
  WeightedGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(ElementId v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  // Sum of incident edge weights.
  double weighted_degree(ElementId v) const { return degree_[v]; }
  double total_weight() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> degree_;
};

// Total weight of edges with exactly one endpoint in S.
double CutValue(const WeightedGraph& g, std::span<const ElementId> set);

class CutFunction final : public SetFunction {
 public:
  explicit CutFunction(std::shared_ptr<const WeightedGraph> graph);

  int ground_size() const override { return graph_->n(); }
  std::string name() const override { return "maxcut"; }
  double Value(std::span<const ElementId> set) const override;
  std::unique_ptr<EvalState> NewState() const override;

  const WeightedGraph& graph() const { return *graph_; }

 private:
  std::shared_ptr<const WeightedGraph> graph_;
};

// sqrt(sum_k min(a_k, b_k)^2). Throws ContractError on a length mismatch.
double MovieSimilarity(std::span<const double> tags_a,
                       std::span<const double> tags_b);

struct MovieParams {
  double alpha = 0.5;
  double beta = 0.5;
  double lambda = 3.0;
  double mu = 7.0;
};

// Dense movie instance. similarity and same_genre are row-major n x n.
struct MovieInstance {
  int n = 0;
  std::vector<double> ratings;
  std::vector<double> similarity;
  std::vector<std::uint8_t> same_genre;
  MovieParams params;

  double w(int i, int j) const { return similarity[std::size_t(i) * n + j]; }
  bool chi(int i, int j) const { return same_genre[std::size_t(i) * n + j]; }

  // Throws ContractError unless the matrices are symmetric with zero
  // similarity diagonal, sizes agree, and all entries are finite and
  // nonnegative.
  void Validate() const;
};

// Builds similarity from tag vectors and genre-share flags from one genre
// label per movie.
MovieInstance MakeMovieInstance(const std::vector<std::vector<double>>& tags,
                                std::vector<double> ratings,
                                std::span<const int> genres,
                                const MovieParams& params);

// alpha * sum_{i in S} r_i
//   + beta * (sum_{i in S} sum_{j in A} w_ij
//             - sum_{i in S} sum_{j in S} (lambda + chi_ij * mu) w_ij)
double MovieValue(const MovieInstance& m, std::span<const ElementId> set);

class MovieFunction final : public SetFunction {
 public:
  explicit MovieFunction(std::shared_ptr<const MovieInstance> instance);

  int ground_size() const override { return instance_->n; }
  std::string name() const override { return "movie"; }
  double Value(std::span<const ElementId> set) const override;
  std::unique_ptr<EvalState> NewState() const override;

  const MovieInstance& instance() const { return *instance_; }
  // Row-major (lambda + chi * mu) * w.
  const std::vector<double>& penalty() const { return penalty_; }
  const std::vector<double>& row_sums() const { return row_sums_; }

 private:
  std::shared_ptr<const MovieInstance> instance_;
  std::vector<double> penalty_;
  std::vector<double> row_sums_;
};

// Social network with per-user suggestibility.
struct RevenueInstance {
  std::shared_ptr<const WeightedGraph> graph;
  std::vector<double> suggestibility;

  void Validate() const;
};

// sum_{i not in S} a_i * sqrt(sum_{j in S} w_ij)
double RevenueValue(const RevenueInstance& rv, std::span<const ElementId> set);

class RevenueFunction final : public SetFunction {
 public:
  explicit RevenueFunction(std::shared_ptr<const RevenueInstance> instance);

  int ground_size() const override { return instance_->graph->n(); }
  std::string name() const override { return "revenue"; }
  double Value(std::span<const ElementId> set) const override;
  std::unique_ptr<EvalState> NewState() const override;

  const RevenueInstance& instance() const { return *instance_; }

 private:
  std::shared_ptr<const RevenueInstance> instance_;
};

double ModularValue(std::span<const double> values,
                    std::span<const ElementId> set);

class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> values);

  int ground_size() const override { return static_cast<int>(values_.size()); }
  std::string name() const override { return "modular"; }
  double Value(std::span<const ElementId> set) const override;
  std::unique_ptr<EvalState> NewState() const override;

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Weighted coverage: element i covers items covers[i]; f(S) is the total
// weight of items covered by S. Monotone and submodular.
struct CoverageInstance {
  std::vector<double> item_weights;
  std::vector<std::vector<int>> covers;
};

class CoverageFunction final : public SetFunction {
 public:
  explicit CoverageFunction(std::shared_ptr<const CoverageInstance> instance);

  int ground_size() const override {
    return static_cast<int>(instance_->covers.size());
  }
  std::string name() const override { return "coverage"; }
  double Value(std::span<const ElementId> set) const override;
  std::unique_ptr<EvalState> NewState() const override;

 private:
  std::shared_ptr<const CoverageInstance> instance_;
};

}  // namespace lowadapt

#endif  // LOWADAPT_OBJECTIVES_H_
