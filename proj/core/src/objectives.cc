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

#include "lowadapt/objectives.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "lowadapt/errors.h"

namespace lowadapt {
namespace {

// Deduplicated membership mask plus unique members in first-seen order.
struct Membership {
  std::vector<char> in;
  ElementSet unique;

  Membership(int n, std::span<const ElementId> set) : in(n, 0) {
    ValidateIds(set, n);
    unique.reserve(set.size());
    for (ElementId x : set) {
      if (!in[x]) {
        in[x] = 1;
        unique.push_back(x);
      }
    }
  }
};

// Shared bookkeeping for the incremental states below.
class StateBase : public EvalState {
 public:
  explicit StateBase(int n) : in_(n, 0) {}

  bool Contains(ElementId x) const override { return in_[x] != 0; }
  double Value() const override { return value_; }
  std::span<const ElementId> members() const override { return members_; }

 protected:
  // Returns false if x was already present.
  bool Mark(ElementId x) {
    if (in_[x]) return false;
    in_[x] = 1;
    members_.push_back(x);
    return true;
  }

  std::vector<char> in_;
  ElementSet members_;
  double value_ = 0.0;
};

class CutState final : public StateBase {
 public:
  explicit CutState(const WeightedGraph* g)
      : StateBase(g->n()), g_(g), inside_weight_(g->n(), 0.0) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<CutState>(*this);
  }

  void Insert(ElementId x) override {
    if (in_[x]) return;
    value_ += Gain(x);
    Mark(x);
    for (const auto& nb : g_->neighbors(x)) inside_weight_[nb.v] += nb.w;
  }

  double Gain(ElementId x) const override {
    if (in_[x]) return 0.0;
    return g_->weighted_degree(x) - 2.0 * inside_weight_[x];
  }

 private:
  const WeightedGraph* g_;
  std::vector<double> inside_weight_;  // w(x, T)
};

class MovieState final : public StateBase {
 public:
  explicit MovieState(const MovieFunction* f)
      : StateBase(f->ground_size()), f_(f), penalty_sum_(f->ground_size()) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<MovieState>(*this);
  }

  void Insert(ElementId x) override {
    if (in_[x]) return;
    value_ += Gain(x);
    Mark(x);
    const int n = f_->ground_size();
    const double* row = f_->penalty().data() + std::size_t(x) * n;
    for (int j = 0; j < n; ++j) penalty_sum_[j] += row[j];
  }

  double Gain(ElementId x) const override {
    if (in_[x]) return 0.0;
    const auto& m = f_->instance();
    // The (x, x) penalty term vanishes with the zero diagonal.
    return m.params.alpha * m.ratings[x] +
           m.params.beta * (f_->row_sums()[x] - 2.0 * penalty_sum_[x]);
  }

 private:
  const MovieFunction* f_;
  std::vector<double> penalty_sum_;  // sum_{j in T} P_xj
};

class RevenueState final : public StateBase {
 public:
  explicit RevenueState(const RevenueInstance* rv)
      : StateBase(rv->graph->n()), rv_(rv), influence_(rv->graph->n(), 0.0) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<RevenueState>(*this);
  }

  void Insert(ElementId x) override {
    if (in_[x]) return;
    value_ += Gain(x);
    Mark(x);
    for (const auto& nb : rv_->graph->neighbors(x)) influence_[nb.v] += nb.w;
  }

  double Gain(ElementId x) const override {
    if (in_[x]) return 0.0;
    const auto& a = rv_->suggestibility;
    double gain = -a[x] * std::sqrt(influence_[x]);
    for (const auto& nb : rv_->graph->neighbors(x)) {
      if (in_[nb.v] || nb.w == 0.0) continue;
      const double s = influence_[nb.v];
      // sqrt(s + w) - sqrt(s) without cancellation.
      gain += a[nb.v] * nb.w / (std::sqrt(s + nb.w) + std::sqrt(s));
    }
    return gain;
  }

 private:
  const RevenueInstance* rv_;
  std::vector<double> influence_;  // sum_{j in T} w_xj
};

class ModularState final : public StateBase {
 public:
  explicit ModularState(const std::vector<double>* values)
      : StateBase(static_cast<int>(values->size())), values_(values) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<ModularState>(*this);
  }
  void Insert(ElementId x) override {
    if (Mark(x)) value_ += (*values_)[x];
  }
  double Gain(ElementId x) const override {
    return in_[x] ? 0.0 : (*values_)[x];
  }

 private:
  const std::vector<double>* values_;
};

class CoverageState final : public StateBase {
 public:
  explicit CoverageState(const CoverageInstance* c)
      : StateBase(static_cast<int>(c->covers.size())),
        c_(c),
        covered_(c->item_weights.size(), 0) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<CoverageState>(*this);
  }
  void Insert(ElementId x) override {
    if (in_[x]) return;
    value_ += Gain(x);
    Mark(x);
    for (int item : c_->covers[x]) ++covered_[item];
  }
  double Gain(ElementId x) const override {
    if (in_[x]) return 0.0;
    double gain = 0.0;
    for (int item : c_->covers[x]) {
      if (covered_[item] == 0) gain += c_->item_weights[item];
    }
    return gain;
  }

 private:
  const CoverageInstance* c_;
  std::vector<int> covered_;
};

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw ContractError("WeightedGraph: negative vertex count");
  std::vector<std::int64_t> count(n_ + 1, 0);
  std::set<std::pair<ElementId, ElementId>> seen;
  for (const auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw ContractError("WeightedGraph: edge endpoint out of range");
    }
    if (e.u == e.v) throw ContractError("WeightedGraph: self-loop");
    if (!std::isfinite(e.w) || e.w < 0.0) {
      throw ContractError("WeightedGraph: weight must be finite and >= 0");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw ContractError("WeightedGraph: duplicate edge");
    }
    ++count[e.u + 1];
    ++count[e.v + 1];
  }
  offsets_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + count[v + 1];
  adjacency_.resize(offsets_[n_]);
  degree_.assign(n_, 0.0);
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.w};
    adjacency_[cursor[e.v]++] = {e.u, e.w};
    degree_[e.u] += e.w;
    degree_[e.v] += e.w;
  }
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.w;
  return total;
}

double CutValue(const WeightedGraph& g, std::span<const ElementId> set) {
  Membership m(g.n(), set);
  double value = 0.0;
  for (const auto& e : g.edges()) {
    if (m.in[e.u] != m.in[e.v]) value += e.w;
  }
  return value;
}

CutFunction::CutFunction(std::shared_ptr<const WeightedGraph> graph)
    : graph_(std::move(graph)) {}

double CutFunction::Value(std::span<const ElementId> set) const {
  return CutValue(*graph_, set);
}

std::unique_ptr<EvalState> CutFunction::NewState() const {
  return std::make_unique<CutState>(graph_.get());
}

double MovieSimilarity(std::span<const double> tags_a,
                       std::span<const double> tags_b) {
  if (tags_a.size() != tags_b.size()) {
    throw ContractError("MovieSimilarity: tag vectors differ in length");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < tags_a.size(); ++k) {
    const double m = std::min(tags_a[k], tags_b[k]);
    sum += m * m;
  }
  return std::sqrt(sum);
}

void MovieInstance::Validate() const {
  const std::size_t nn = std::size_t(n) * n;
  if (n < 0 || ratings.size() != std::size_t(n) || similarity.size() != nn ||
      same_genre.size() != nn) {
    throw ContractError("MovieInstance: inconsistent sizes");
  }
  for (double r : ratings) {
    if (!std::isfinite(r) || r < 0.0) {
      throw ContractError("MovieInstance: ratings must be finite and >= 0");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) {
      throw ContractError("MovieInstance: similarity diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(w(i, j)) || w(i, j) < 0.0) {
        throw ContractError("MovieInstance: similarity must be finite, >= 0");
      }
      if (w(i, j) != w(j, i) || chi(i, j) != chi(j, i)) {
        throw ContractError("MovieInstance: matrices must be symmetric");
      }
    }
  }
  const auto& p = params;
  if (p.alpha < 0 || p.beta < 0 || p.lambda < 0 || p.mu < 0) {
    throw ContractError("MovieInstance: parameters must be nonnegative");
  }
}

MovieInstance MakeMovieInstance(const std::vector<std::vector<double>>& tags,
                                std::vector<double> ratings,
                                std::span<const int> genres,
                                const MovieParams& params) {
  const int n = static_cast<int>(tags.size());
  if (ratings.size() != tags.size() || genres.size() != tags.size()) {
    throw ContractError("MakeMovieInstance: inconsistent sizes");
  }
  MovieInstance m;
  m.n = n;
  m.ratings = std::move(ratings);
  m.params = params;
  m.similarity.assign(std::size_t(n) * n, 0.0);
  m.same_genre.assign(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = MovieSimilarity(tags[i], tags[j]);
      m.similarity[std::size_t(i) * n + j] = w;
      m.similarity[std::size_t(j) * n + i] = w;
      const std::uint8_t same = genres[i] == genres[j] ? 1 : 0;
      m.same_genre[std::size_t(i) * n + j] = same;
      m.same_genre[std::size_t(j) * n + i] = same;
    }
  }
  m.Validate();
  return m;
}

double MovieValue(const MovieInstance& m, std::span<const ElementId> set) {
  Membership mem(m.n, set);
  const auto& p = m.params;
  double rating_sum = 0.0;
  double outward = 0.0;
  double internal = 0.0;
  for (ElementId i : mem.unique) {
    rating_sum += m.ratings[i];
    for (int j = 0; j < m.n; ++j) outward += m.w(i, j);
    for (ElementId j : mem.unique) {
      internal += (p.lambda + (m.chi(i, j) ? p.mu : 0.0)) * m.w(i, j);
    }
  }
  return p.alpha * rating_sum + p.beta * (outward - internal);
}

MovieFunction::MovieFunction(std::shared_ptr<const MovieInstance> instance)
    : instance_(std::move(instance)) {
  instance_->Validate();
  const int n = instance_->n;
  const auto& p = instance_->params;
  penalty_.resize(std::size_t(n) * n);
  row_sums_.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = instance_->w(i, j);
      penalty_[std::size_t(i) * n + j] =
          (p.lambda + (instance_->chi(i, j) ? p.mu : 0.0)) * w;
      row_sums_[i] += w;
    }
  }
}

double MovieFunction::Value(std::span<const ElementId> set) const {
  return MovieValue(*instance_, set);
}

std::unique_ptr<EvalState> MovieFunction::NewState() const {
  return std::make_unique<MovieState>(this);
}

void RevenueInstance::Validate() const {
  if (!graph) throw ContractError("RevenueInstance: missing graph");
  if (suggestibility.size() != std::size_t(graph->n())) {
    throw ContractError("RevenueInstance: one suggestibility per user");
  }
  for (double a : suggestibility) {
    if (!std::isfinite(a) || a < 0.0) {
      throw ContractError("RevenueInstance: suggestibility must be >= 0");
    }
  }
}

double RevenueValue(const RevenueInstance& rv, std::span<const ElementId> set) {
  const auto& g = *rv.graph;
  Membership m(g.n(), set);
  std::vector<double> influence(g.n(), 0.0);
  for (ElementId j : m.unique) {
    for (const auto& nb : g.neighbors(j)) influence[nb.v] += nb.w;
  }
  double value = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    if (!m.in[i]) value += rv.suggestibility[i] * std::sqrt(influence[i]);
  }
  return value;
}

RevenueFunction::RevenueFunction(
    std::shared_ptr<const RevenueInstance> instance)
    : instance_(std::move(instance)) {
  instance_->Validate();
}

double RevenueFunction::Value(std::span<const ElementId> set) const {
  return RevenueValue(*instance_, set);
}

std::unique_ptr<EvalState> RevenueFunction::NewState() const {
  return std::make_unique<RevenueState>(instance_.get());
}

double ModularValue(std::span<const double> values,
                    std::span<const ElementId> set) {
  Membership m(static_cast<int>(values.size()), set);
  double value = 0.0;
  for (ElementId x : m.unique) value += values[x];
  return value;
}

ModularFunction::ModularFunction(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ContractError("ModularFunction: non-finite");
  }
}

double ModularFunction::Value(std::span<const ElementId> set) const {
  return ModularValue(values_, set);
}

std::unique_ptr<EvalState> ModularFunction::NewState() const {
  return std::make_unique<ModularState>(&values_);
}

CoverageFunction::CoverageFunction(
    std::shared_ptr<const CoverageInstance> instance)
    : instance_(std::move(instance)) {
  const int items = static_cast<int>(instance_->item_weights.size());
  for (double w : instance_->item_weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ContractError("CoverageFunction: item weights must be >= 0");
    }
  }
  for (const auto& cover : instance_->covers) {
    for (int item : cover) {
      if (item < 0 || item >= items) {
        throw ContractError("CoverageFunction: item id out of range");
      }
    }
  }
}

double CoverageFunction::Value(std::span<const ElementId> set) const {
  Membership m(ground_size(), set);
  std::vector<char> covered(instance_->item_weights.size(), 0);
  double value = 0.0;
  for (ElementId x : m.unique) {
    for (int item : instance_->covers[x]) {
      if (!covered[item]) {
        covered[item] = 1;
        value += instance_->item_weights[item];
      }
    }
  }
  return value;
}

std::unique_ptr<EvalState> CoverageFunction::NewState() const {
  return std::make_unique<CoverageState>(instance_.get());
}

}  // namespace lowadapt
