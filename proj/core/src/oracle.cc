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

#include "lowadapt/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "lowadapt/errors.h"
#include "lowadapt/rng.h"

namespace lowadapt {
namespace {

// Fallback state: every answer is a from-scratch Value() call.
class RecomputingState final : public EvalState {
 public:
  explicit RecomputingState(const SetFunction* f)
      : f_(f), in_(f->ground_size(), 0), value_(f->Value({})) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<RecomputingState>(*this);
  }

  void Insert(ElementId x) override {
    if (in_[x]) return;
    in_[x] = 1;
    members_.push_back(x);
    value_ = f_->Value(members_);
  }

  bool Contains(ElementId x) const override { return in_[x] != 0; }
  double Value() const override { return value_; }

  double Gain(ElementId x) const override {
    if (in_[x]) return 0.0;
    scratch_ = members_;
    scratch_.push_back(x);
    return f_->Value(scratch_) - value_;
  }

  std::span<const ElementId> members() const override { return members_; }

 private:
  const SetFunction* f_;
  std::vector<char> in_;
  ElementSet members_;
  mutable ElementSet scratch_;
  double value_;
};

class CountingState final : public EvalState {
 public:
  CountingState(std::unique_ptr<EvalState> inner,
                std::shared_ptr<std::atomic<std::int64_t>> count)
      : inner_(std::move(inner)), count_(std::move(count)) {}

  std::unique_ptr<EvalState> Clone() const override {
    return std::make_unique<CountingState>(inner_->Clone(), count_);
  }
  void Insert(ElementId x) override { inner_->Insert(x); }
  bool Contains(ElementId x) const override { return inner_->Contains(x); }
  double Value() const override {
    count_->fetch_add(1, std::memory_order_relaxed);
    return inner_->Value();
  }
  double Gain(ElementId x) const override {
    count_->fetch_add(1, std::memory_order_relaxed);
    return inner_->Gain(x);
  }
  std::span<const ElementId> members() const override {
    return inner_->members();
  }

 private:
  std::unique_ptr<EvalState> inner_;
  std::shared_ptr<std::atomic<std::int64_t>> count_;
};

std::atomic<std::uint64_t> next_ledger_id{1};

ElementSet MaskToSet(std::uint32_t mask) {
  ElementSet out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace

std::unique_ptr<EvalState> SetFunction::NewState() const {
  return std::make_unique<RecomputingState>(this);
}

LambdaFunction::LambdaFunction(int n, Fn fn, std::string name)
    : n_(n), fn_(std::move(fn)), name_(std::move(name)) {
  if (n_ < 1) throw ContractError("LambdaFunction: ground set must be nonempty");
}

double LambdaFunction::Value(std::span<const ElementId> set) const {
  ElementSet unique(set.begin(), set.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  return fn_(unique);
}

CountingFunction::CountingFunction(std::shared_ptr<const SetFunction> inner)
    : inner_(std::move(inner)),
      count_(std::make_shared<std::atomic<std::int64_t>>(0)) {}

double CountingFunction::Value(std::span<const ElementId> set) const {
  count_->fetch_add(1, std::memory_order_relaxed);
  return inner_->Value(set);
}

std::unique_ptr<EvalState> CountingFunction::NewState() const {
  return std::make_unique<CountingState>(inner_->NewState(), count_);
}

QueryLedger::QueryLedger() : id_(next_ledger_id.fetch_add(1)) {}

void QueryLedger::RequireLive(const char* op) const {
  if (joined_) {
    throw LedgerError(std::string(op) + " on a ledger that was already joined");
  }
}

void QueryLedger::Charge(std::int64_t size) {
  RequireLive("Charge");
  if (size < 0) throw LedgerError("Charge: negative batch size");
  if (size == 0) return;
  queries_ += size;
  rounds_ += 1;
}

std::vector<QueryLedger> QueryLedger::Fork(int branches) {
  RequireLive("Fork");
  if (branches <= 0) throw LedgerError("Fork: branches must be positive");
  std::vector<QueryLedger> children(branches);
  for (auto& child : children) child.parent_id_ = id_;
  return children;
}

void QueryLedger::Join(std::span<QueryLedger> children) {
  RequireLive("Join");
  if (children.empty()) throw LedgerError("Join: no children");
  std::int64_t depth = 0;
  std::int64_t total = 0;
  for (const auto& child : children) {
    if (child.joined_) throw LedgerError("Join: child joined twice");
    if (child.parent_id_ != id_) {
      throw LedgerError("Join: child was not forked from this ledger");
    }
    depth = std::max(depth, child.rounds_);
    total += child.queries_;
  }
  for (auto& child : children) child.joined_ = true;
  rounds_ += depth;
  queries_ += total;
}

void ValidateIds(std::span<const ElementId> set, int n) {
  for (ElementId x : set) {
    if (x < 0 || x >= n) {
      throw MalformedQueryError("element id " + std::to_string(x) +
                                " outside ground set of size " +
                                std::to_string(n));
    }
  }
}

std::vector<double> EvaluateBatch(QueryLedger& ledger, const SetFunction& f,
                                  const QueryBatch& batch) {
  for (const auto& request : batch) ValidateIds(request, f.ground_size());
  ledger.Charge(static_cast<std::int64_t>(batch.size()));
  std::vector<double> values;
  values.reserve(batch.size());
  for (const auto& request : batch) values.push_back(f.Value(request));
  return values;
}

double Marginal(QueryLedger& ledger, const SetFunction& f, ElementId x,
                std::span<const ElementId> set,
                std::optional<double> known_set_value) {
  ValidateIds(set, f.ground_size());
  ValidateIds(std::span<const ElementId>(&x, 1), f.ground_size());
  if (std::find(set.begin(), set.end(), x) != set.end()) {
    // S + {x} = S; the query is still issued and counted.
    ledger.Charge(known_set_value ? 1 : 2);
    return 0.0;
  }
  ElementSet with(set.begin(), set.end());
  with.push_back(x);
  if (known_set_value) {
    ledger.Charge(1);
    return f.Value(with) - *known_set_value;
  }
  ledger.Charge(2);
  const double base = f.Value(set);
  return f.Value(with) - base;
}

SubmodularityReport CheckSubmodular(const SetFunction& f, int trials,
                                    std::uint64_t seed) {
  const int n = f.ground_size();
  Rng rng = Rng(seed).Derive(Stream::kProbe, 1);
  SubmodularityReport report;
  if (n < 1) return report;
  ElementSet larger, smaller, outside;
  for (int t = 0; t < trials; ++t) {
    larger.clear();
    smaller.clear();
    outside.clear();
    for (ElementId e = 0; e < n; ++e) {
      if (rng.Bernoulli(0.5)) {
        larger.push_back(e);
        if (rng.Bernoulli(0.5)) smaller.push_back(e);
      } else {
        outside.push_back(e);
      }
    }
    if (outside.empty()) {
      // Move one random element out of T (and S) so that x exists.
      const auto k = rng.UniformInt(larger.size());
      const ElementId moved = larger[k];
      larger.erase(larger.begin() + k);
      smaller.erase(std::remove(smaller.begin(), smaller.end(), moved),
                    smaller.end());
      outside.push_back(moved);
    }
    const ElementId x = outside[rng.UniformInt(outside.size())];
    ElementSet larger_x = larger;
    larger_x.push_back(x);
    ElementSet smaller_x = smaller;
    smaller_x.push_back(x);
    const double gain_larger = f.Value(larger_x) - f.Value(larger);
    const double gain_smaller = f.Value(smaller_x) - f.Value(smaller);
    ++report.triples_checked;
    if (gain_larger > gain_smaller + kOracleTolerance) {
      report.submodular = false;
      report.violation = SubmodularityViolation{smaller, larger, x,
                                                gain_smaller, gain_larger};
      return report;
    }
  }
  return report;
}

SubmodularityReport CheckSubmodularExhaustive(const SetFunction& f) {
  const int n = f.ground_size();
  if (n > 12) {
    throw CapacityError("CheckSubmodularExhaustive: ground set larger than 12");
  }
  const std::uint32_t full = (1u << n);
  std::vector<double> value(full);
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    value[mask] = f.Value(MaskToSet(mask));
  }
  SubmodularityReport report;
  for (std::uint32_t t = 0; t < full; ++t) {
    // Enumerate subsets of t in ascending numeric order.
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = t;; s = (s - 1) & t) {
      subsets.push_back(s);
      if (s == 0) break;
    }
    std::reverse(subsets.begin(), subsets.end());
    for (std::uint32_t s : subsets) {
      for (int x = 0; x < n; ++x) {
        const std::uint32_t bit = 1u << x;
        if (t & bit) continue;
        const double gain_larger = value[t | bit] - value[t];
        const double gain_smaller = value[s | bit] - value[s];
        ++report.triples_checked;
        if (gain_larger > gain_smaller + kOracleTolerance) {
          report.submodular = false;
          report.violation = SubmodularityViolation{
              MaskToSet(s), MaskToSet(t), x, gain_smaller, gain_larger};
          return report;
        }
      }
    }
  }
  return report;
}

SamplingLemmaReport CheckSamplingLemma(const SetFunction& f,
                                       std::span<const ElementId> pool,
                                       double p, int trials,
                                       std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) {
    throw ContractError("CheckSamplingLemma: p must lie in [0, 1]");
  }
  if (trials < 1) throw ContractError("CheckSamplingLemma: trials < 1");
  ValidateIds(pool, f.ground_size());
  Rng rng = Rng(seed).Derive(Stream::kProbe, 2);
  double sum = 0.0;
  double sum_sq = 0.0;
  ElementSet sample;
  for (int t = 0; t < trials; ++t) {
    sample.clear();
    for (ElementId x : pool) {
      if (rng.Bernoulli(p)) sample.push_back(x);
    }
    const double v = f.Value(sample);
    sum += v;
    sum_sq += v * v;
  }
  SamplingLemmaReport report;
  report.mean = sum / trials;
  const double var =
      trials > 1 ? std::max(0.0, (sum_sq - sum * report.mean) / (trials - 1))
                 : 0.0;
  report.stddev = std::sqrt(var);
  report.lower_bound = (1.0 - p) * f.Value({});
  report.holds = report.mean >= report.lower_bound -
                                    3.0 * report.stddev / std::sqrt(trials);
  return report;
}

std::optional<MonotonicityViolation> FindNegativeMarginal(const SetFunction& f,
                                                          int probes,
                                                          std::uint64_t seed) {
  const int n = f.ground_size();
  Rng rng = Rng(seed).Derive(Stream::kProbe, 3);
  ElementSet set;
  for (int t = 0; t < probes; ++t) {
    // Vary the density so both small and large sets get probed.
    const double density = rng.Uniform01();
    set.clear();
    ElementSet outside;
    for (ElementId e = 0; e < n; ++e) {
      (rng.Bernoulli(density) ? set : outside).push_back(e);
    }
    if (outside.empty()) continue;
    const ElementId x = outside[rng.UniformInt(outside.size())];
    ElementSet with = set;
    with.push_back(x);
    const double gain = f.Value(with) - f.Value(set);
    if (gain < -kOracleTolerance) {
      return MonotonicityViolation{set, x, gain};
    }
  }
  return std::nullopt;
}

}  // namespace lowadapt
