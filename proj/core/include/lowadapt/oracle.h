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

// Value-oracle access to set functions with query and round accounting.
//
// A SetFunction is evaluated either from scratch (Value) or through an
// EvalState that holds a current set T and answers f(T) and f(x | T).
// Algorithms pair every answer they consume with a charge on a
// QueryLedger: one value query per answer, one adaptive round per batch of
// mutually independent queries. Parallel sections fork the ledger; joining
// adds the children's queries and the deepest child's rounds.

#ifndef LOWADAPT_ORACLE_H_
#define LOWADAPT_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lowadapt {

using ElementId = std::int32_t;
using ElementSet = std::vector<ElementId>;
using QueryBatch = std::vector<ElementSet>;

// Absolute tolerance for oracle-level comparisons.
inline constexpr double kOracleTolerance = 1e-9;

// Incremental evaluation context holding a current set T.
class EvalState {
 public:
  virtual ~EvalState() = default;

  virtual std::unique_ptr<EvalState> Clone() const = 0;

  // T <- T + {x}. Not a value query.
  virtual void Insert(ElementId x) = 0;
  virtual bool Contains(ElementId x) const = 0;

  // f(T).
  virtual double Value() const = 0;
  // f(T + {x}) - f(T); zero when x is already in T.
  virtual double Gain(ElementId x) const = 0;

  // Elements of T in insertion order.
  virtual std::span<const ElementId> members() const = 0;
};

// A set function over the ground set {0, ..., ground_size() - 1}.
// Implementations are immutable after construction and safe to evaluate
// from several threads.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual int ground_size() const = 0;
  virtual std::string name() const = 0;

  // f(S). Repeated ids are treated as one.
  virtual double Value(std::span<const ElementId> set) const = 0;

  // An evaluation state positioned at the empty set. The default re-runs
  // Value() for every answer; objectives override it with O(1)/O(deg)
  // incremental updates.
  virtual std::unique_ptr<EvalState> NewState() const;
};

// Wraps a callable as a SetFunction. Intended for tests and ad-hoc
// objectives.
class LambdaFunction final : public SetFunction {
 public:
  using Fn = std::function<double(std::span<const ElementId>)>;

  LambdaFunction(int n, Fn fn, std::string name = "lambda");

  int ground_size() const override { return n_; }
  std::string name() const override { return name_; }
  double Value(std::span<const ElementId> set) const override;

 private:
  int n_;
  Fn fn_;
  std::string name_;
};

// Counts every answer handed out, through Value() and through states.
// Serves as an instrumented count independent of ledger bookkeeping.
class CountingFunction final : public SetFunction {
 public:
  explicit CountingFunction(std::shared_ptr<const SetFunction> inner);

  int ground_size() const override { return inner_->ground_size(); }
  std::string name() const override { return inner_->name(); }
  double Value(std::span<const ElementId> set) const override;
  std::unique_ptr<EvalState> NewState() const override;

  std::int64_t count() const { return count_->load(); }
  void Reset() { count_->store(0); }

 private:
  std::shared_ptr<const SetFunction> inner_;
  std::shared_ptr<std::atomic<std::int64_t>> count_;
};

// Queries issued and adaptive rounds consumed by one (sub)computation.
//
// A ledger is driven by one worker at a time. Fork() produces children that
// start at zero and may be driven concurrently; Join() is the
// synchronization point that folds them back: rounds += max, queries += sum.
class QueryLedger {
 public:
  QueryLedger();

  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;
  QueryLedger(QueryLedger&&) noexcept = default;
  QueryLedger& operator=(QueryLedger&&) noexcept = default;

  std::int64_t queries() const { return queries_; }
  std::int64_t rounds() const { return rounds_; }
  bool live() const { return !joined_; }

  // Records one batch of `size` independent queries. An empty batch is free.
  void Charge(std::int64_t size);

  std::vector<QueryLedger> Fork(int branches);
  void Join(std::span<QueryLedger> children);

 private:
  void RequireLive(const char* op) const;

  std::uint64_t id_;
  std::uint64_t parent_id_ = 0;
  bool joined_ = false;
  std::int64_t queries_ = 0;
  std::int64_t rounds_ = 0;
};

// Evaluates every request as one adaptive round.
std::vector<double> EvaluateBatch(QueryLedger& ledger, const SetFunction& f,
                                  const QueryBatch& batch);

// f(S + {x}) - f(S). Two queries in one round, or one query when the caller
// already knows f(S).
double Marginal(QueryLedger& ledger, const SetFunction& f, ElementId x,
                std::span<const ElementId> set,
                std::optional<double> known_set_value = std::nullopt);

// A witness that f(x | T) > f(x | S) for S a subset of T, x outside T.
struct SubmodularityViolation {
  ElementSet smaller;
  ElementSet larger;
  ElementId element = -1;
  double gain_smaller = 0.0;
  double gain_larger = 0.0;
};

struct SubmodularityReport {
  bool submodular = true;
  std::int64_t triples_checked = 0;
  std::optional<SubmodularityViolation> violation;
};

// Samples `trials` random triples (S subset of T, x outside T).
SubmodularityReport CheckSubmodular(const SetFunction& f, int trials,
                                    std::uint64_t seed);

// Every triple; ground sets up to 12 elements. Triples are visited with T
// ascending as a bitmask, then S ascending, then x ascending, so the
// reported witness is the first in that order.
SubmodularityReport CheckSubmodularExhaustive(const SetFunction& f);

// Monte-Carlo estimate of E[f(X_p)] against (1 - p) f(empty).
struct SamplingLemmaReport {
  bool holds = true;
  double mean = 0.0;
  double stddev = 0.0;
  double lower_bound = 0.0;  // (1 - p) f(empty)
};

SamplingLemmaReport CheckSamplingLemma(const SetFunction& f,
                                       std::span<const ElementId> pool,
                                       double p, int trials,
                                       std::uint64_t seed);

struct MonotonicityViolation {
  ElementSet set;
  ElementId element = -1;
  double gain = 0.0;
};

// Randomized probe for a negative marginal f(x | S) < -tolerance.
std::optional<MonotonicityViolation> FindNegativeMarginal(
    const SetFunction& f, int probes, std::uint64_t seed);

// Throws MalformedQueryError unless every id lies in [0, n).
void ValidateIds(std::span<const ElementId> set, int n);

}  // namespace lowadapt

#endif  // LOWADAPT_ORACLE_H_
