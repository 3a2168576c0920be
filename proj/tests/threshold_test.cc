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

#include "lowadapt/threshold.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "lowadapt/errors.h"
#include "lowadapt/instances.h"
#include "lowadapt/objectives.h"
#include "test_util.h"

namespace lowadapt {
namespace {

using testing::Iota;
using testing::Triangle;

double Cost(const std::vector<double>& costs, const ElementSet& s) {
  double c = 0.0;
  for (ElementId x : s) c += costs[x];
  return c;
}

TEST(SampleSeqTest, BothFitGivesPermutation) {
  ModularFunction f({1.0, 1.0});
  const std::vector<double> costs = {1.0, 1.0};
  const Problem problem{&f, costs, 2.0};
  const ElementSet x = {0, 1};
  int first_zero = 0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    Rng rng(t);
    ElementSet seq = SampleSeq(problem, {}, x, rng);
    ASSERT_EQ(seq.size(), 2u);
    first_zero += seq[0] == 0;
    std::sort(seq.begin(), seq.end());
    EXPECT_EQ(seq, x);
  }
  EXPECT_NEAR(first_zero / 2000.0, 0.5, 3 * std::sqrt(0.25 / 2000));
}

TEST(SampleSeqTest, OneSlotFrequencies) {
  ModularFunction f({1.0, 1.0});
  const std::vector<double> costs = {1.0, 1.0};
  const Problem problem{&f, costs, 1.0};
  const ElementSet x = {0, 1};
  const int trials = 10000;
  int zero = 0;
  Rng rng(5);
  for (int t = 0; t < trials; ++t) {
    const ElementSet seq = SampleSeq(problem, {}, x, rng);
    ASSERT_EQ(seq.size(), 1u);
    zero += seq[0] == 0;
  }
  EXPECT_NEAR(zero / double(trials), 0.5, 3 * std::sqrt(0.25 / trials));
}

TEST(SampleSeqTest, EmptyInputAndErrors) {
  auto inner = std::make_shared<ModularFunction>(std::vector<double>{1, 1, 1});
  CountingFunction f(inner);
  const std::vector<double> costs = {1.0, 1.0, 2.0};
  const Problem problem{&f, costs, 2.0};
  Rng rng(1);
  EXPECT_TRUE(SampleSeq(problem, {}, {}, rng).empty());
  const ElementSet s = {0};
  const ElementSet bad_fit = {2};
  EXPECT_THROW(SampleSeq(problem, s, bad_fit, rng), ContractError);
  const ElementSet overlap = {0, 1};
  EXPECT_THROW(SampleSeq(problem, s, overlap, rng), ContractError);
  const ElementSet heavy = {0, 1, 2};
  const ElementSet y = {};
  EXPECT_THROW(SampleSeq(problem, heavy, y, rng), ContractError);
  const ElementSet x = {1};
  SampleSeq(problem, s, x, rng);
  EXPECT_EQ(f.count(), 0);
}

TEST(SampleSeqTest, EveryPrefixFits) {
  const std::vector<double> costs = {0.3, 0.9, 0.2, 0.7, 0.5, 0.4, 0.8};
  ModularFunction f(std::vector<double>(costs.size(), 1.0));
  const Problem problem{&f, costs, 1.6};
  const ElementSet x = Iota(7);
  for (std::uint64_t t = 0; t < 500; ++t) {
    Rng rng(t);
    const ElementSet seq = SampleSeq(problem, {}, x, rng);
    EXPECT_LE(Cost(costs, seq), 1.6 + 1e-12);
    // Maximal: nothing left fits.
    for (ElementId e : x) {
      if (std::find(seq.begin(), seq.end(), e) == seq.end()) {
        EXPECT_GT(Cost(costs, seq) + costs[e], 1.6);
      }
    }
  }
}

PrefixTable Table(const std::vector<PrefixRow>& rows, double candidate_cost) {
  PrefixTable t;
  t.rows = rows;
  t.candidate_cost = candidate_cost;
  t.sequence = Iota(static_cast<int>(rows.size()));
  return t;
}

PrefixRow Row(double good_cost, double good_gain, double negative) {
  PrefixRow r;
  r.good_cost = good_cost;
  r.good_gain = good_gain;
  r.negative_mass = negative;
  r.negative_mass_all = negative;
  return r;
}

TEST(FindKStarTest, NoNegativesMeansCostCondition) {
  const PrefixTable t =
      Table({Row(2.8, 3.0, 0), Row(2.0, 2.0, 0), Row(0.0, 0.0, 0)}, 3.0);
  const KStar k = FindKStar(t, 0.1, true);
  EXPECT_EQ(k.i_star, 2);
  EXPECT_EQ(k.k_star, 2);
  EXPECT_FALSE(k.value_triggered());
  // The last row satisfies 0 <= 0 but comes after i*.
  EXPECT_EQ(k.j_star, 3);
  EXPECT_FALSE(FindKStar(t, 0.1, false).j_star.has_value());
}

TEST(FindKStarTest, CostConditionAtFirstRow) {
  const PrefixTable t = Table({Row(1.0, 2.0, 0), Row(0.0, 0.0, 0)}, 3.0);
  EXPECT_EQ(FindKStar(t, 0.1, true).i_star, 1);
  EXPECT_EQ(FindKStar(t, 0.1, true).k_star, 1);
}

TEST(FindKStarTest, CraftedValueTrigger) {
  // eps * 4.0 = 0.4 <= 0.5 at row 2.
  const PrefixTable t =
      Table({Row(2.9, 5.0, 0.1), Row(2.8, 4.0, 0.5), Row(0.0, 0.0, 0.0)}, 3.0);
  const KStar k = FindKStar(t, 0.1, true);
  EXPECT_EQ(k.i_star, 3);
  EXPECT_EQ(k.j_star, 2);
  EXPECT_EQ(k.k_star, 2);
  EXPECT_TRUE(k.value_triggered());
  EXPECT_FALSE(FindKStar(t, 0.1, false).value_triggered());
}

TEST(FindKStarTest, TieCountsAsCost) {
  const PrefixTable t = Table({Row(2.9, 5.0, 0), Row(1.0, 1.0, 0.5)}, 3.0);
  const KStar k = FindKStar(t, 0.1, true);
  EXPECT_EQ(k.i_star, 2);
  EXPECT_EQ(k.j_star, 2);
  EXPECT_FALSE(k.value_triggered());
  EXPECT_THROW(FindKStar(PrefixTable{}, 0.1, true), ContractError);
}

TEST(BinarySearchKStarTest, FindsFirstTrueAndSkipsLastProbe) {
  for (int d = 1; d <= 40; ++d) {
    for (int first = 1; first <= d; ++first) {
      const auto r = BinarySearchKStar(d, [&](int i) {
        EXPECT_LT(i, d);
        return ProbeOutcome{i >= first, false};
      });
      EXPECT_EQ(r.k_star, first);
      EXPECT_LE(static_cast<int>(r.probed.size()),
                static_cast<int>(std::ceil(std::log2(d + 1))));
    }
  }
}

// Random (S, sequence, tau) tables over small random instances.
PrefixTable RandomTable(std::uint64_t seed, double* eps_out) {
  Rng rng = Rng(seed).Derive(Stream::kTrial);
  const int n = 6 + static_cast<int>(rng.UniformInt(9));
  std::shared_ptr<const SetFunction> f;
  switch (seed % 3) {
    case 0:
      f = std::make_shared<CutFunction>(std::make_shared<WeightedGraph>(
          GenErdosRenyi(n, 0.2 + 0.6 * rng.Uniform01(), seed)));
      break;
    case 1:
      f = std::make_shared<RevenueFunction>(std::make_shared<RevenueInstance>(
          GenRevenueInstance(n, 0.5, seed)));
      break;
    default: {
      MovieGenParams gen;
      gen.n = n;
      gen.params.lambda = 0.5 + rng.Uniform01();
      gen.params.mu = rng.Uniform01();
      f = std::make_shared<MovieFunction>(
          std::make_shared<MovieInstance>(GenMovieInstance(gen, seed)));
    }
  }
  std::vector<double> costs(n);
  for (auto& c : costs) c = 0.1 + rng.Uniform01();
  const double total = std::accumulate(costs.begin(), costs.end(), 0.0);
  const double budget = std::max(*std::max_element(costs.begin(), costs.end()),
                                 (0.3 + 0.5 * rng.Uniform01()) * total);
  static std::vector<std::vector<double>> keep;
  keep.push_back(costs);
  const Problem problem{f.get(), keep.back(), budget};
  auto s = f->NewState();
  double s_cost = 0.0;
  std::vector<ElementId> rest;
  for (ElementId e : Iota(n)) {
    if (rng.Bernoulli(0.2) && s_cost + costs[e] <= budget / 2) {
      s->Insert(e);
      s_cost += costs[e];
    } else {
      rest.push_back(e);
    }
  }
  std::vector<ElementId> x;
  for (ElementId e : rest) {
    if (s_cost + costs[e] <= budget) x.push_back(e);
  }
  *eps_out = 0.05 + 0.4 * rng.Uniform01();
  if (x.empty()) return {};
  const ElementSet seq = SampleSeq(problem, s->members(), x, rng);
  static std::vector<std::shared_ptr<const SetFunction>> alive;
  alive.push_back(f);
  return BuildPrefixTable(problem, *s, s_cost, s->Value(), x, seq,
                          0.05 + 2.0 * rng.Uniform01());
}

TEST(BinarySearchKStarTest, AgreesWithLinearScanOnRandomTables) {
  int compared = 0;
  for (std::uint64_t seed = 0; compared < 300; ++seed) {
    double eps = 0.1;
    const PrefixTable t = RandomTable(seed, &eps);
    if (t.rows.empty()) continue;
    ++compared;
    ASSERT_TRUE(CheckBinMonotonicity(t, eps, true)) << "seed " << seed;
    const KStar linear = FindKStar(t, eps, true, ValueRule::kBinary);
    const int d = static_cast<int>(t.rows.size());
    const auto bin = BinarySearchKStar(d, [&](int i) {
      return ProbeOutcome{CostCondition(t, i, eps),
                          ValueCondition(t, i, eps, ValueRule::kBinary)};
    });
    EXPECT_EQ(bin.k_star, linear.k_star) << "seed " << seed;
    EXPECT_EQ(bin.value_triggered, linear.value_triggered()) << "seed " << seed;
  }
}

TEST(PrefixTableTest, RowsMatchDefinitions) {
  // Triangle, unit costs, B = 3, tau = 0.5, S empty, sequence 0, 1, 2.
  CutFunction f(Triangle());
  const std::vector<double> costs = {1, 1, 1};
  const Problem problem{&f, costs, 3.0};
  auto s = f.NewState();
  const ElementSet x = {0, 1, 2};
  const PrefixTable t = BuildPrefixTable(problem, *s, 0.0, 0.0, x, x, 0.5);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(t.candidate_cost, 3.0);
  // A_1 = {0}: both others have gain 0, neither good nor negative.
  EXPECT_DOUBLE_EQ(t.rows[0].value, 2.0);
  EXPECT_EQ(t.rows[0].feasible, 2);
  EXPECT_EQ(t.rows[0].good, 0);
  EXPECT_DOUBLE_EQ(t.rows[0].negative_mass, 0.0);
  // A_2 = {0, 1}: 2 has gain -2.
  EXPECT_DOUBLE_EQ(t.rows[1].value, 2.0);
  EXPECT_DOUBLE_EQ(t.rows[1].head_gain, 0.0);
  EXPECT_DOUBLE_EQ(t.rows[1].negative_mass, 2.0);
  // A_3: the head gain -2 enters the prefix mass.
  EXPECT_DOUBLE_EQ(t.rows[2].value, 0.0);
  EXPECT_DOUBLE_EQ(t.rows[2].head_gain, -2.0);
  EXPECT_DOUBLE_EQ(t.rows[2].prefix_negative_mass, 2.0);
  EXPECT_EQ(t.rows[2].feasible, 0);
}

TEST(CheckBinMonotonicityTest, ModularHasNoValueTrigger) {
  ModularFunction f({1, 2, 3, 4, 5});
  const std::vector<double> costs = {1, 1, 1, 1, 1};
  const Problem problem{&f, costs, 3.0};
  auto s = f.NewState();
  const ElementSet x = Iota(5);
  Rng rng(2);
  const ElementSet seq = SampleSeq(problem, {}, x, rng);
  const PrefixTable t = BuildPrefixTable(problem, *s, 0, 0, x, seq, 0.5);
  EXPECT_TRUE(CheckBinMonotonicity(t, 0.1, true));
  for (int i = 1; i <= static_cast<int>(t.rows.size()); ++i) {
    if (t.rows[i - 1].good_gain > 0) {
      EXPECT_FALSE(ValueCondition(t, i, 0.1, ValueRule::kBinary));
    }
  }
}

TEST(CheckBinMonotonicityTest, LargeNegativeMidSequenceStaysTriggered) {
  // Element 3 becomes strongly negative once 2 is in the prefix.
  LambdaFunction f(5, [](std::span<const ElementId> s) {
    bool has[5] = {};
    for (ElementId e : s) has[e] = true;
    double v = 0.0;
    for (int i = 0; i < 5; ++i) v += has[i] ? 1.0 : 0.0;
    if (has[2] && has[3]) v -= 20.0;
    return v;
  });
  const std::vector<double> costs(5, 1.0);
  const Problem problem{&f, costs, 5.0};
  auto s = f.NewState();
  const ElementSet x = Iota(5);
  const ElementSet seq = {0, 2, 1, 4, 3};
  const PrefixTable t = BuildPrefixTable(problem, *s, 0, 0, x, seq, 0.5);
  std::vector<bool> c2;
  for (int i = 1; i <= 5; ++i) {
    c2.push_back(ValueCondition(t, i, 0.1, ValueRule::kBinary));
  }
  EXPECT_EQ(c2, (std::vector<bool>{false, true, true, true, true}));
  EXPECT_TRUE(CheckBinMonotonicity(t, 0.1, true));
}

TEST(ThreshSeqTest, ModularDensityOneTakesEverything) {
  const std::vector<double> costs = {0.5, 1.0, 0.25, 2.0, 0.75};
  ModularFunction f(costs);
  const double total = std::accumulate(costs.begin(), costs.end(), 0.0);
  const Problem problem{&f, costs, total};
  ThreshParams params{0.5, 0.1, 10};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    QueryLedger ledger;
    Rng rng(seed);
    const ThreshResult r = ThreshSeq(problem, Iota(5), params, ledger, rng);
    ElementSet sorted = r.solution;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, Iota(5));
    EXPECT_EQ(r.ctr, 0);
    EXPECT_NEAR(r.value, total, 1e-12);
    EXPECT_LE(r.iterations, 5);
  }
}

TEST(ThreshSeqTest, HighThresholdEmptiesCandidates) {
  ModularFunction f({1.0, 2.0});
  const std::vector<double> costs = {1.0, 1.0};
  const Problem problem{&f, costs, 2.0};
  QueryLedger ledger;
  Rng rng(1);
  const ThreshResult r =
      ThreshSeq(problem, Iota(2), ThreshParams{2.5, 0.1, 4}, ledger, rng);
  EXPECT_TRUE(r.solution.empty());
  EXPECT_TRUE(r.filtered.empty());
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(ledger.rounds(), 1);
}

// Every ordering of the triangle: A_1 already leaves no good element
// (both other gains are 0 < tau), so the cost condition stops at k* = 1.
TEST(ThreshSeqTest, TriangleTakesOneVertex) {
  CutFunction f(Triangle());
  const std::vector<double> costs = {1, 1, 1};
  const Problem problem{&f, costs, 3.0};
  std::map<ElementId, int> picked;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    QueryLedger ledger;
    Rng rng(seed);
    const ThreshResult r =
        ThreshSeq(problem, Iota(3), ThreshParams{0.5, 0.1, 100}, ledger, rng);
    EXPECT_DOUBLE_EQ(r.value, 2.0);
    ASSERT_EQ(r.solution.size(), 1u);
    ++picked[r.solution[0]];
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(r.trace[0].trigger, Trigger::kCost);
  }
  EXPECT_EQ(picked.size(), 3u);
}

TEST(ThreshBinTest, TriangleMatchesSeqDistribution) {
  CutFunction f(Triangle());
  const std::vector<double> costs = {1, 1, 1};
  const Problem problem{&f, costs, 3.0};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    QueryLedger ledger;
    Rng rng(seed);
    const ThreshResult r =
        ThreshBin(problem, Iota(3), ThreshParams{0.5, 0.1, 100}, ledger, rng);
    EXPECT_DOUBLE_EQ(r.value, 2.0);
    EXPECT_EQ(r.solution.size(), 1u);
  }
}

TEST(ThreshBinTest, MonotoneFilterIsIdentity) {
  ModularFunction f({3, 1, 4, 1, 5, 9, 2, 6});
  const std::vector<double> costs = {1, 2, 1, 1, 2, 3, 1, 2};
  const Problem problem{&f, costs, 6.0};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    QueryLedger ledger;
    Rng rng(seed);
    const ThreshResult r =
        ThreshBin(problem, Iota(8), ThreshParams{0.9, 0.2, 5}, ledger, rng);
    EXPECT_EQ(r.solution, r.preliminary);
    EXPECT_DOUBLE_EQ(r.value, r.preliminary_value);
  }
}

TEST(ThreshTest, ParameterValidation) {
  ModularFunction f({1.0});
  const std::vector<double> costs = {1.0};
  const Problem problem{&f, costs, 1.0};
  QueryLedger ledger;
  Rng rng(1);
  const ElementSet x = {0};
  EXPECT_THROW(ThreshSeq(problem, x, {0.0, 0.1, 1}, ledger, rng),
               ContractError);
  EXPECT_THROW(ThreshSeq(problem, x, {1.0, 1.0, 1}, ledger, rng),
               ContractError);
  EXPECT_THROW(ThreshBin(problem, x, {1.0, 0.1, 0}, ledger, rng),
               ContractError);
}

TEST(ThreshTest, NonFiniteMarginalIsNumericError) {
  LambdaFunction f(3, [](std::span<const ElementId> s) {
    return s.size() >= 2 ? std::numeric_limits<double>::quiet_NaN()
                         : static_cast<double>(s.size());
  });
  const std::vector<double> costs = {1, 1, 1};
  const Problem problem{&f, costs, 3.0};
  QueryLedger ledger;
  Rng rng(1);
  EXPECT_THROW(ThreshSeq(problem, Iota(3), {0.5, 0.1, 3}, ledger, rng),
               NumericError);
}

struct KernelCase {
  std::shared_ptr<const SetFunction> f;
  std::vector<double> costs;
  double budget;
};

KernelCase RandomCase(std::uint64_t seed, int n) {
  KernelCase k;
  const int kind = static_cast<int>(seed % 3);
  if (kind == 0) {
    k.f = std::make_shared<CutFunction>(
        std::make_shared<WeightedGraph>(GenErdosRenyi(n, 0.3, seed)));
  } else if (kind == 1) {
    k.f = std::make_shared<RevenueFunction>(std::make_shared<RevenueInstance>(
        GenRevenueInstance(n, 0.3, seed)));
  } else {
    MovieGenParams gen;
    gen.n = n;
    gen.params.lambda = 1.0;
    gen.params.mu = 0.5;
    k.f = std::make_shared<MovieFunction>(
        std::make_shared<MovieInstance>(GenMovieInstance(gen, seed)));
  }
  const CostModel m = AssignCosts(CostKind::kUniform01, n, 0.3, seed);
  k.costs = m.costs;
  k.budget = m.budget;
  return k;
}

TEST(ThreshTest, LedgerMatchesInstrumentedCount) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const KernelCase k = RandomCase(seed, 25);
    CountingFunction f(k.f);
    const Problem problem{&f, k.costs, k.budget};
    std::vector<ElementId> x;
    for (int e = 0; e < 25; ++e) {
      if (k.costs[e] <= k.budget) x.push_back(e);
    }
    const double tau = 0.5 * f.Value(x) / k.budget;
    f.Reset();
    for (bool bin : {false, true}) {
      QueryLedger ledger;
      Rng rng(seed);
      const ThreshParams params{std::max(tau, 1e-3), 0.2, 3};
      const ThreshResult r = bin ? ThreshBin(problem, x, params, ledger, rng)
                                 : ThreshSeq(problem, x, params, ledger, rng);
      EXPECT_EQ(ledger.queries(), f.count()) << seed << " bin " << bin;
      EXPECT_EQ(r.queries, ledger.queries());
      EXPECT_EQ(r.rounds, ledger.rounds());
      EXPECT_LE(Cost(k.costs, r.solution), k.budget * (1 + 1e-12));
      EXPECT_LE(r.iterations, r.iteration_bound);
      EXPECT_NEAR(r.value, k.f->Value(r.solution), 1e-9);
      f.Reset();
    }
  }
}

TEST(ThreshTest, IterationBoundFormula) {
  const std::vector<double> costs = {1.0, 4.0, 2.0};
  // ceil(10 * ln(3 * 4)) + 2 + 1 = 25 + 3.
  EXPECT_EQ(IterationBound(costs, Iota(3), 0.1, 2),
            static_cast<std::int64_t>(std::ceil(10 * std::log(12.0))) + 3);
  EXPECT_EQ(IterationBound(costs, Iota(3), 0.1, std::nullopt),
            static_cast<std::int64_t>(std::ceil(10 * std::log(12.0))) + 1);
}

TEST(ThreshTest, LeftoverInequalityAtCounterLimit) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const KernelCase k = RandomCase(seed, 20);
    const Problem problem{k.f.get(), k.costs, k.budget};
    std::vector<ElementId> x;
    for (int e = 0; e < 20; ++e) {
      if (k.costs[e] <= k.budget) x.push_back(e);
    }
    const ThreshParams params{0.2, 0.3, 1};
    QueryLedger ledger;
    Rng rng(seed);
    const ThreshResult r = ThreshSeq(problem, x, params, ledger, rng);
    if (r.ctr != 1) continue;
    ++checked;
    const LeftoverCheck c = CheckLeftoverGood(problem, r, params, ledger);
    EXPECT_TRUE(c.holds) << seed << ": " << c.value << " < " << c.rhs;
  }
  EXPECT_GT(checked, 0);
}

TEST(ThreshTest, AuditCountsRuns) {
  ResetThreshAudit();
  const KernelCase k = RandomCase(4, 15);
  const Problem problem{k.f.get(), k.costs, k.budget};
  QueryLedger ledger;
  Rng rng(4);
  ThreshSeq(problem, Iota(15), {0.1, 0.2, 2}, ledger, rng);
  EXPECT_GT(ThreshAudit().runs_checked, 0);
  EXPECT_EQ(ThreshAudit().violations, 0);
}

TEST(SubmodMaxTest, EmptyPool) {
  ModularFunction f({1.0, 2.0});
  QueryLedger ledger;
  Rng rng(1);
  const SubmodMaxResult r = SubmodMax(f, {}, 3, ledger, rng);
  EXPECT_TRUE(r.solution.empty());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.queries(), 1);
}

TEST(SubmodMaxTest, ModularMeanAboveQuarter) {
  const std::vector<double> values = {3, 1, 4, 1, 5, 9, 2, 6};
  ModularFunction f(values);
  const double opt = std::accumulate(values.begin(), values.end(), 0.0);
  std::vector<double> got;
  for (int t = 0; t < 10000; ++t) {
    QueryLedger ledger;
    Rng rng = Rng(t).Derive(Stream::kTrial);
    got.push_back(SubmodMax(f, Iota(8), 1, ledger, rng).value);
  }
  EXPECT_GE(testing::Mean(got), opt / 4);
}

TEST(SubmodMaxTest, TriangleHalfSampleMean) {
  CutFunction f(Triangle());
  std::vector<double> halves;
  for (int t = 0; t < 10000; ++t) {
    QueryLedger ledger;
    Rng rng = Rng(t).Derive(Stream::kTrial);
    const SubmodMaxResult r = SubmodMax(f, Iota(3), 1, ledger, rng);
    halves.push_back(r.sample_values.at(0));
    EXPECT_DOUBLE_EQ(r.value, 2.0);
    EXPECT_EQ(ledger.rounds(), 1);
  }
  const double se = testing::StdDev(halves) / std::sqrt(10000.0);
  EXPECT_NEAR(testing::Mean(halves), 1.5, 3 * se);
  EXPECT_GE(testing::Mean(halves), 2.0 / 4);
}

TEST(SubmodMaxTest, RepetitionsAndAccounting) {
  EXPECT_EQ(SubmodMaxRepetitions(0.5), 2);  // ceil(2 ln 2) = 2
  EXPECT_EQ(SubmodMaxRepetitions(0.125),
            static_cast<int>(std::ceil(8 * std::log(8.0))));
  EXPECT_EQ(SubmodMaxRepetitions(0.99), 1);
  auto inner = std::make_shared<CutFunction>(
      std::make_shared<WeightedGraph>(GenErdosRenyi(10, 0.5, 3)));
  CountingFunction f(inner);
  QueryLedger ledger;
  Rng rng(2);
  SubmodMax(f, Iota(10), 5, ledger, rng);
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.queries(), f.count());
  EXPECT_EQ(ledger.queries(), 1 + 10 + 5);
}

TEST(BetterCandidateTest, ValueThenCostThenLexicographic) {
  const ElementSet a = {0, 2}, b = {1}, c = {0, 3};
  EXPECT_TRUE(BetterCandidate(2.0, 5.0, a, 1.0, 1.0, b));
  EXPECT_TRUE(BetterCandidate(2.0, 1.0, b, 2.0, 5.0, a));
  EXPECT_TRUE(BetterCandidate(2.0, 1.0, a, 2.0, 1.0, c));
  EXPECT_FALSE(BetterCandidate(2.0, 1.0, c, 2.0, 1.0, a));
  EXPECT_FALSE(BetterCandidate(2.0, 1.0, a, 2.0, 1.0, a));
}

}  // namespace
}  // namespace lowadapt
