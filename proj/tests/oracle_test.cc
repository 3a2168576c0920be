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

#include <cmath>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "lowadapt/errors.h"
#include "lowadapt/objectives.h"
#include "lowadapt/rng.h"
#include "test_util.h"

namespace lowadapt {
namespace {

using testing::Triangle;

TEST(EvaluateBatchTest, EmptySetOnCut) {
  CutFunction f(Triangle());
  QueryLedger ledger;
  EXPECT_EQ(EvaluateBatch(ledger, f, {{}}), std::vector<double>{0.0});
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.queries(), 1);
}

TEST(EvaluateBatchTest, TriangleValues) {
  CutFunction f(Triangle());
  QueryLedger ledger;
  const auto values = EvaluateBatch(ledger, f, {{0}, {1}, {0, 1}});
  EXPECT_EQ(values, (std::vector<double>{2.0, 2.0, 2.0}));
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.queries(), 3);
}

TEST(EvaluateBatchTest, SequentialBatchesAccumulate) {
  ModularFunction f(std::vector<double>(8, 1.0));
  QueryLedger ledger;
  EvaluateBatch(ledger, f, QueryBatch(5, ElementSet{1}));
  EvaluateBatch(ledger, f, QueryBatch(7, ElementSet{2}));
  EXPECT_EQ(ledger.rounds(), 2);
  EXPECT_EQ(ledger.queries(), 12);
}

TEST(EvaluateBatchTest, EmptyBatchIsFree) {
  ModularFunction f({1.0});
  QueryLedger ledger;
  EXPECT_TRUE(EvaluateBatch(ledger, f, {}).empty());
  EXPECT_EQ(ledger.rounds(), 0);
  EXPECT_EQ(ledger.queries(), 0);
}

TEST(EvaluateBatchTest, RejectsOutOfRangeIds) {
  CutFunction f(Triangle());
  QueryLedger ledger;
  EXPECT_THROW(EvaluateBatch(ledger, f, {{0, 3}}), MalformedQueryError);
  EXPECT_THROW(EvaluateBatch(ledger, f, {{-1}}), MalformedQueryError);
}

TEST(EvaluateBatchTest, IdenticalBatchesAgree) {
  auto g = std::make_shared<WeightedGraph>(GenErdosRenyi(30, 0.3, 4));
  CutFunction f(g);
  QueryLedger ledger;
  const QueryBatch batch = {{1, 5, 7}, {}, {2, 3, 29}};
  EXPECT_EQ(EvaluateBatch(ledger, f, batch), EvaluateBatch(ledger, f, batch));
}

TEST(LedgerTest, ForkJoinTakesMaxRoundsAndSumQueries) {
  QueryLedger parent;
  auto kids = parent.Fork(3);
  for (auto& k : kids) {
    k.Charge(5);
    k.Charge(5);
  }
  parent.Join(kids);
  EXPECT_EQ(parent.rounds(), 2);
  EXPECT_EQ(parent.queries(), 30);
}

// Five rounds need at least five queries, so the deeper child issues one
// query per round.
TEST(LedgerTest, UnevenChildren) {
  QueryLedger parent;
  auto kids = parent.Fork(2);
  kids[0].Charge(4);
  for (int i = 0; i < 5; ++i) kids[1].Charge(1);
  parent.Join(kids);
  EXPECT_EQ(parent.rounds(), 5);
  EXPECT_EQ(parent.queries(), 9);
}

TEST(LedgerTest, IdleChildLeavesParentUnchanged) {
  QueryLedger parent;
  parent.Charge(3);
  auto kids = parent.Fork(1);
  parent.Join(kids);
  EXPECT_EQ(parent.rounds(), 1);
  EXPECT_EQ(parent.queries(), 3);
}

TEST(LedgerTest, SingleChildJoin) {
  QueryLedger parent;
  auto kids = parent.Fork(1);
  kids[0].Charge(3);
  kids[0].Charge(3);
  kids[0].Charge(3);
  parent.Join(kids);
  EXPECT_EQ(parent.rounds(), 3);
  EXPECT_EQ(parent.queries(), 9);
}

TEST(LedgerTest, NestedForksCompose) {
  QueryLedger root;
  for (int depth : {2, 3}) {
    auto kids = root.Fork(2);
    for (auto& k : kids) {
      auto grand = k.Fork(2);
      for (int r = 0; r < depth; ++r) grand[1].Charge(1);
      k.Join(grand);
    }
    root.Join(kids);
  }
  EXPECT_EQ(root.rounds(), 5);
  EXPECT_EQ(root.queries(), 2 * (2 + 3));
}

TEST(LedgerTest, Errors) {
  QueryLedger parent;
  EXPECT_THROW(parent.Fork(0), LedgerError);
  auto kids = parent.Fork(2);
  parent.Join(kids);
  EXPECT_THROW(parent.Join(kids), LedgerError);
  EXPECT_THROW(kids[0].Charge(1), LedgerError);
  std::vector<QueryLedger> none;
  EXPECT_THROW(parent.Join(none), LedgerError);
  QueryLedger stranger;
  auto foreign = stranger.Fork(1);
  EXPECT_THROW(parent.Join(foreign), LedgerError);
}

// Random fork/join trees: rounds must equal the critical path computed
// directly on the tree.
int Drive(QueryLedger& ledger, Rng& rng, int depth) {
  int path = 0;
  const int steps = 1 + static_cast<int>(rng.UniformInt(3));
  for (int s = 0; s < steps; ++s) {
    if (depth < 3 && rng.Bernoulli(0.4)) {
      const int b = 1 + static_cast<int>(rng.UniformInt(3));
      auto kids = ledger.Fork(b);
      int deepest = 0;
      for (auto& k : kids) deepest = std::max(deepest, Drive(k, rng, depth + 1));
      ledger.Join(kids);
      path += deepest;
    } else {
      const auto size = static_cast<std::int64_t>(rng.UniformInt(4));
      ledger.Charge(size);
      path += size > 0 ? 1 : 0;
    }
  }
  return path;
}

TEST(LedgerTest, RoundsEqualCriticalPath) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    QueryLedger root;
    const int expected = Drive(root, rng, 0);
    EXPECT_EQ(root.rounds(), expected) << "seed " << seed;
    if (root.queries() > 0) EXPECT_LE(root.rounds(), root.queries());
  }
}

TEST(MarginalTest, TriangleExamples) {
  CutFunction f(Triangle());
  QueryLedger ledger;
  EXPECT_DOUBLE_EQ(Marginal(ledger, f, 0, {}), 2.0);
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.queries(), 2);
  const ElementSet s = {0, 1};
  EXPECT_DOUBLE_EQ(Marginal(ledger, f, 2, s), -2.0);
  EXPECT_DOUBLE_EQ(Marginal(ledger, f, 2, s, 2.0), -2.0);
  EXPECT_EQ(ledger.queries(), 5);
  EXPECT_EQ(ledger.rounds(), 3);
}

TEST(MarginalTest, MemberHasZeroGain) {
  CutFunction f(Triangle());
  QueryLedger ledger;
  const ElementSet s = {0, 2};
  EXPECT_EQ(Marginal(ledger, f, 2, s), 0.0);
}

TEST(MarginalTest, AddsUpToUnion) {
  auto g = std::make_shared<WeightedGraph>(GenErdosRenyi(20, 0.4, 9));
  CutFunction f(g);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    ElementSet s;
    for (int i = 0; i < 20; ++i) {
      if (rng.Bernoulli(0.3)) s.push_back(i);
    }
    const auto x = static_cast<ElementId>(rng.UniformInt(20));
    QueryLedger ledger;
    ElementSet with = s;
    with.push_back(x);
    EXPECT_NEAR(Marginal(ledger, f, x, s) + f.Value(s), f.Value(with), 1e-12);
  }
}

TEST(CheckSubmodularTest, ModularPasses) {
  LambdaFunction f(6, [](std::span<const ElementId> s) {
    return static_cast<double>(s.size());
  });
  EXPECT_TRUE(CheckSubmodular(f, 500, 1).submodular);
  EXPECT_TRUE(CheckSubmodularExhaustive(f).submodular);
}

TEST(CheckSubmodularTest, TrianglePassesExhaustively) {
  CutFunction f(Triangle());
  const auto r = CheckSubmodularExhaustive(f);
  EXPECT_TRUE(r.submodular);
  EXPECT_GT(r.triples_checked, 0);
}

TEST(CheckSubmodularTest, SquareFailsWithWitness) {
  LambdaFunction f(3, [](std::span<const ElementId> s) {
    return static_cast<double>(s.size() * s.size());
  });
  const auto r = CheckSubmodularExhaustive(f);
  ASSERT_FALSE(r.submodular);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->smaller, ElementSet{});
  EXPECT_EQ(r.violation->larger, ElementSet{0});
  EXPECT_EQ(r.violation->element, 1);
  EXPECT_DOUBLE_EQ(r.violation->gain_smaller, 1.0);
  EXPECT_DOUBLE_EQ(r.violation->gain_larger, 3.0);
  EXPECT_FALSE(CheckSubmodular(f, 2000, 5).submodular);
}

TEST(CheckSamplingLemmaTest, Examples) {
  CutFunction f(Triangle());
  const auto all = testing::Iota(3);
  const auto r = CheckSamplingLemma(f, all, 0.5, 10000, 7);
  EXPECT_TRUE(r.holds);
  // Average cut over the 8 subsets: six of them cut 2 edges.
  EXPECT_NEAR(r.mean, 1.5, 4 * r.stddev / std::sqrt(10000.0));
  EXPECT_TRUE(CheckSamplingLemma(f, all, 0.0, 100, 7).holds);
  EXPECT_DOUBLE_EQ(CheckSamplingLemma(f, all, 0.0, 100, 7).mean, 0.0);
}

TEST(CheckSamplingLemmaTest, PositiveEmptyValue) {
  // f(S) = 4 - |S| on 4 elements: E f(X_p) = 4 - 4p >= (1 - p) 4.
  LambdaFunction f(4, [](std::span<const ElementId> s) {
    return 4.0 - static_cast<double>(s.size());
  });
  const auto all = testing::Iota(4);
  for (double p : {0.1, 0.5, 0.9, 1.0}) {
    const auto r = CheckSamplingLemma(f, all, p, 4000, 11);
    EXPECT_TRUE(r.holds) << p;
    EXPECT_DOUBLE_EQ(r.lower_bound, (1 - p) * 4.0);
  }
}

TEST(CountingFunctionTest, CountsValuesAndStateAnswers) {
  auto inner = std::make_shared<CutFunction>(Triangle());
  CountingFunction f(inner);
  f.Value(ElementSet{0});
  auto s = f.NewState();
  s->Insert(1);
  s->Gain(0);
  s->Value();
  EXPECT_EQ(f.count(), 3);
  f.Reset();
  EXPECT_EQ(f.count(), 0);
}

TEST(FindNegativeMarginalTest, MonotoneAndNot) {
  ModularFunction mono({1.0, 2.0, 0.5, 3.0});
  EXPECT_FALSE(FindNegativeMarginal(mono, 1000, 1).has_value());
  CutFunction cut(Triangle());
  const auto v = FindNegativeMarginal(cut, 1000, 1);
  ASSERT_TRUE(v.has_value());
  ElementSet with = v->set;
  with.push_back(v->element);
  EXPECT_NEAR(cut.Value(with) - cut.Value(v->set), v->gain, 1e-12);
  EXPECT_LT(v->gain, 0.0);
}

TEST(DefaultStateTest, MatchesValue) {
  LambdaFunction f(5, [](std::span<const ElementId> s) {
    return std::sqrt(static_cast<double>(s.size()));
  });
  auto s = f.NewState();
  s->Insert(3);
  EXPECT_DOUBLE_EQ(s->Value(), 1.0);
  EXPECT_DOUBLE_EQ(s->Gain(1), std::sqrt(2.0) - 1.0);
  EXPECT_EQ(s->Gain(3), 0.0);
  EXPECT_TRUE(s->Contains(3));
  auto c = s->Clone();
  c->Insert(1);
  EXPECT_FALSE(s->Contains(1));
  EXPECT_EQ(c->members().size(), 2u);
}

}  // namespace
}  // namespace lowadapt
