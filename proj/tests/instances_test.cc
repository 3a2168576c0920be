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

#include "lowadapt/instances.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "lowadapt/errors.h"
#include "lowadapt/rng.h"
#include "test_util.h"

namespace lowadapt {
namespace {

std::string Data(const std::string& name) {
  return std::string(LOWADAPT_TEST_DATA_DIR) + "/" + name;
}

TEST(GenErdosRenyiTest, ExtremeProbabilities) {
  EXPECT_TRUE(GenErdosRenyi(10, 0.0, 1).edges().empty());
  const WeightedGraph k4 = GenErdosRenyi(4, 1.0, 1);
  EXPECT_EQ(k4.edges().size(), 6u);
  for (const Edge& e : k4.edges()) {
    EXPECT_GE(e.w, 0.0);
    EXPECT_LT(e.w, 1.0);
  }
}

TEST(GenErdosRenyiTest, EdgeCountWithinThreeSigma) {
  const WeightedGraph g = GenErdosRenyi(1000, 0.1, 17);
  const double pairs = 1000.0 * 999.0 / 2.0;
  const double mean = pairs * 0.1;
  const double sigma = std::sqrt(pairs * 0.1 * 0.9);
  EXPECT_NEAR(static_cast<double>(g.edges().size()), mean, 3 * sigma);
}

TEST(GenErdosRenyiTest, ChiSquareOverPairBlocks) {
  // 1225 pairs of G(50, 0.5) split into 25 blocks of 49; 25 degrees of
  // freedom, 0.999 quantile 52.62.
  const WeightedGraph g = GenErdosRenyi(50, 0.5, 23);
  std::vector<int> present(25, 0);
  for (const Edge& e : g.edges()) {
    const int u = std::min(e.u, e.v), v = std::max(e.u, e.v);
    const int index = u * 50 - u * (u + 1) / 2 + (v - u - 1);
    ++present[index / 49];
  }
  double chi2 = 0.0;
  for (int count : present) {
    const double expected = 24.5;
    chi2 += (count - expected) * (count - expected) / expected;
    chi2 += ((49 - count) - expected) * ((49 - count) - expected) / expected;
  }
  EXPECT_LT(chi2, 52.62);
}

TEST(GenErdosRenyiTest, SameSeedSameGraph) {
  const WeightedGraph a = GenErdosRenyi(200, 0.05, 9);
  const WeightedGraph b = GenErdosRenyi(200, 0.05, 9);
  ASSERT_EQ(a.edges().size(), b.edges().size());
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    EXPECT_EQ(a.edges()[i].u, b.edges()[i].u);
    EXPECT_EQ(a.edges()[i].v, b.edges()[i].v);
    EXPECT_EQ(a.edges()[i].w, b.edges()[i].w);
  }
  EXPECT_NE(GenErdosRenyi(200, 0.05, 10).edges().size(), 0u);
}

TEST(SampleLomaxTest, Examples) {
  EXPECT_DOUBLE_EQ(SampleLomax(1.0, 2.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(SampleLomax(1.0, 2.0, 0.75), 1.0);
  EXPECT_THROW(SampleLomax(1.0, 2.0, 1.0), ContractError);
  EXPECT_THROW(SampleLomax(0.0, 2.0, 0.5), ContractError);
  EXPECT_THROW(SampleLomax(1.0, -1.0, 0.5), ContractError);
}

TEST(SampleLomaxTest, EmpiricalMean) {
  // Lomax(1, 2) has mean 1 and infinite variance, so the 3 sigma band is
  // estimated from the sample itself.
  Rng rng(5);
  std::vector<double> draws(100000);
  for (auto& d : draws) d = SampleLomax(1.0, 2.0, rng.Uniform01());
  const double mean = testing::Mean(draws);
  const double se = testing::StdDev(draws) / std::sqrt(100000.0);
  EXPECT_NEAR(mean, 1.0, 3 * se);
}

TEST(AssignCostsTest, UnitCosts) {
  const CostModel m = AssignCosts(CostKind::kUnit, 10, 0.5, 1);
  EXPECT_DOUBLE_EQ(m.budget, 5.0);
  EXPECT_EQ(m.ground.size(), 10u);
  EXPECT_EQ(m.dropped, 0);
}

TEST(AssignCostsTest, UniformCostsBudgetAndDrop) {
  const CostModel m = AssignCosts(CostKind::kUniform01, 200, 0.15, 3);
  double total = 0.0;
  for (double c : m.costs) {
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 1.0);
    total += c;
  }
  EXPECT_NEAR(m.budget, 0.15 * total, 1e-9);
  for (ElementId x : m.ground) EXPECT_LE(m.costs[x], m.budget);

  const CostModel tight = AssignCosts(CostKind::kUniform01, 20, 0.02, 3);
  int expected_dropped = 0;
  for (double c : tight.costs) expected_dropped += c > tight.budget;
  EXPECT_EQ(tight.dropped, expected_dropped);
  EXPECT_EQ(tight.ground.size() + tight.dropped, 20u);
  for (ElementId x : tight.ground) EXPECT_LE(tight.costs[x], tight.budget);
}

TEST(AssignCostsTest, AllDroppedIsAnError) {
  EXPECT_THROW(AssignCosts(CostKind::kUnit, 10, 0.05, 1), EmptyInstanceError);
}

TEST(AssignCostsTest, IncidentWeightOnTriangle) {
  const auto g = testing::Triangle();
  const CostModel m = AssignCosts(CostKind::kIncidentWeight, 3, 0.5, 1, g.get());
  for (double c : m.costs) EXPECT_DOUBLE_EQ(c, 1.0);
  EXPECT_DOUBLE_EQ(m.budget, 1.5);
  EXPECT_THROW(AssignCosts(CostKind::kIncidentWeight, 3, 0.5, 1),
               ContractError);
}

TEST(AssignCostsTest, IncidentWeightProportionalToDegree) {
  const WeightedGraph g = GenErdosRenyi(60, 0.2, 4);
  const CostModel m = AssignCosts(CostKind::kIncidentWeight, 60, 0.1, 4, &g);
  double total = 0.0;
  for (double c : m.costs) total += c;
  EXPECT_NEAR(total, 60.0, 1e-9);
  for (int i = 1; i < 60; ++i) {
    if (g.weighted_degree(i) > 0 && g.weighted_degree(0) > 0) {
      EXPECT_NEAR(m.costs[i] / m.costs[0],
                  g.weighted_degree(i) / g.weighted_degree(0), 1e-9);
    }
  }
}

TEST(CostKindTest, ParseRoundTrip) {
  for (CostKind k :
       {CostKind::kUniform01, CostKind::kIncidentWeight, CostKind::kUnit}) {
    EXPECT_EQ(ParseCostKind(CostKindName(k)), k);
  }
  EXPECT_THROW(ParseCostKind("pareto"), ContractError);
}

TEST(InstanceTest, FeasibilityAndValidation) {
  auto f = std::make_shared<ModularFunction>(std::vector<double>{1, 2, 3});
  CostModel costs = AssignCosts(CostKind::kUnit, 3, 2.0 / 3.0, 1);
  const Instance knap = MakeKnapsackInstance(f, costs);
  EXPECT_TRUE(knap.Feasible(std::vector<ElementId>{0, 2}));
  EXPECT_FALSE(knap.Feasible(std::vector<ElementId>{0, 1, 2}));
  const Instance card = MakeCardinalityInstance(f, 1);
  EXPECT_TRUE(card.Feasible(std::vector<ElementId>{2}));
  EXPECT_FALSE(card.Feasible(std::vector<ElementId>{1, 2}));
  EXPECT_THROW(MakeCardinalityInstance(f, 4), ContractError);
  EXPECT_THROW(MakeCardinalityInstance(f, -1), ContractError);
  Instance bad = knap;
  bad.costs[1] = 0.0;
  EXPECT_THROW(bad.Validate(), ContractError);
}

TEST(LoadGraphCsvTest, PathGraph) {
  const WeightedGraph g = LoadGraphCsv(Data("path.csv"));
  EXPECT_EQ(g.n(), 3);
  EXPECT_DOUBLE_EQ(CutValue(g, std::vector<ElementId>{1}), 3.0);
  const WeightedGraph gz = LoadGraphCsv(Data("path.csv.gz"));
  EXPECT_EQ(gz.n(), 3);
  EXPECT_DOUBLE_EQ(CutValue(gz, std::vector<ElementId>{1}), 3.0);
}

TEST(LoadGraphCsvTest, HeaderOnlyGivesEmptyGraph) {
  EXPECT_EQ(LoadGraphCsv(Data("header_only.csv")).n(), 0);
}

TEST(LoadGraphCsvTest, DuplicatesAreSummed) {
  const WeightedGraph g = LoadGraphCsv(Data("duplicate.csv"));
  ASSERT_EQ(g.edges().size(), 1u);
  EXPECT_DOUBLE_EQ(g.edges()[0].w, 3.0);
}

TEST(LoadGraphCsvTest, SparseIdsAreRemapped) {
  const WeightedGraph g = LoadGraphCsv(Data("remap.csv"));
  EXPECT_EQ(g.n(), 3);
  // 10 -> 0, 20 -> 1, 30 -> 2; default weight 1.
  EXPECT_DOUBLE_EQ(g.weighted_degree(2), 1.5);
  EXPECT_DOUBLE_EQ(g.weighted_degree(0), 1.0);
}

TEST(LoadGraphCsvTest, ErrorsCarryLineNumbers) {
  try {
    LoadGraphCsv(Data("malformed.csv"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(LoadGraphCsv(Data("negative.csv")), ParseError);
  EXPECT_THROW(LoadGraphCsv(Data("self_loop.csv")), ParseError);
  EXPECT_THROW(LoadGraphCsv(Data("missing.csv")), ParseError);
}

TEST(WriteGraphCsvTest, RoundTrip) {
  const WeightedGraph g = GenErdosRenyi(30, 0.2, 8);
  const std::string path = ::testing::TempDir() + "/roundtrip.csv";
  WriteGraphCsv(path, g);
  const WeightedGraph back = LoadGraphCsv(path);
  std::remove(path.c_str());
  ASSERT_EQ(back.edges().size(), g.edges().size());
  for (std::uint32_t mask = 0; mask < 200; ++mask) {
    const auto s = testing::FromMask(mask * 2654435761u, 30);
    EXPECT_NEAR(CutValue(back, s), CutValue(g, s), 1e-9);
  }
}

TEST(LoadTagMatrixTest, DenseRowsWithClamp) {
  const TagMatrix t = LoadTagMatrix(Data("tags.csv"));
  EXPECT_EQ(t.movie_ids, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(t.tag_ids, (std::vector<std::int64_t>{10, 11, 12}));
  EXPECT_EQ(t.rows[0], (std::vector<double>{0.5, 0.0, 0.25}));
  EXPECT_EQ(t.rows[1], (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_EQ(t.clamped, 1);
}

TEST(LoadTagMatrixTest, RowWithoutScoreIsMalformed) {
  EXPECT_THROW(LoadTagMatrix(Data("tags_missing.csv")), ParseError);
}

TEST(LoadTagMatrixTest, Errors) {
  EXPECT_THROW(LoadTagMatrix(Data("empty.csv")), ParseError);
  try {
    LoadTagMatrix(Data("tags_malformed.csv"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(GeneratorsTest, Reproducible) {
  MovieGenParams gen;
  gen.n = 25;
  const MovieInstance a = GenMovieInstance(gen, 4), b = GenMovieInstance(gen, 4);
  EXPECT_EQ(a.similarity, b.similarity);
  EXPECT_EQ(a.ratings, b.ratings);
  EXPECT_NO_THROW(a.Validate());
  const RevenueInstance r = GenRevenueInstance(25, 0.2, 4);
  EXPECT_EQ(r.suggestibility, GenRevenueInstance(25, 0.2, 4).suggestibility);
  for (double s : r.suggestibility) EXPECT_GE(s, 0.0);
  const CoverageInstance c = GenCoverageInstance(25, 40, 0.1, 4);
  EXPECT_EQ(c.covers, GenCoverageInstance(25, 40, 0.1, 4).covers);
  EXPECT_EQ(c.covers.size(), 25u);
}

}  // namespace
}  // namespace lowadapt
