// Copyright 2026 The Salign Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "salign/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "salign/error.hpp"
#include "support.hpp"

namespace salign {

namespace {

using S = std::vector<std::string>;
using testing::ReferenceHumanRanking;
using testing::ReferenceRanking;
using testing::ReferenceMetricRankings;
using testing::UniformInt;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

const ReferenceRanking& Row(MetricId m) {
  for (const auto& r : ReferenceMetricRankings()) {
    if (r.metric == m) return r;
  }
  throw std::logic_error("missing row");
}

ScoreTable TableFor(const std::vector<std::pair<std::string, std::optional<double>>>& scores,
                    MetricId metric = MetricId::kManhattan) {
  ScoreTable t;
  t.image_id = "img";
  t.metrics = {metric};
  t.cells.emplace_back();
  for (const auto& [method, raw] : scores) {
    t.methods.push_back(method);
    t.cells[0].push_back({raw, raw});
  }
  return t;
}

// Random permutation of a random-length prefix of the default registry.
S RandomRanking(std::mt19937_64& rng) {
  S items = DefaultMethodRegistry();
  std::shuffle(items.begin(), items.end(), rng);
  items.resize(static_cast<std::size_t>(UniformInt(rng, 1, 9)));
  return items;
}

TEST(HumanRanking, MostVotesFirst) {
  const MethodRegistry& reg = DefaultMethodRegistry();
  VoteTally t{"n02085620_5542", {{"ISCAM", 22}, {"LCAM", 9}, {"CAM", 5}, {"GCAM", 4}, {"XGCAM", 0}}};
  const Ranking r = HumanRanking(t, reg);
  EXPECT_EQ(r.items, (S{"ISCAM", "LCAM", "CAM", "GCAM"}));
  EXPECT_TRUE(r.is_human());
  EXPECT_EQ(r.source_label(), "H");
  EXPECT_FALSE(r.has_ties());
}

TEST(HumanRanking, SingleMethod) {
  const MethodRegistry reg{"A", "B"};
  EXPECT_EQ(HumanRanking({"img", {{"A", 5}}}, reg).items, S{"A"});
}

TEST(HumanRanking, TiesUseRegistryOrder) {
  const MethodRegistry reg{"A", "B", "C"};
  const Ranking r = HumanRanking({"img", {{"B", 3}, {"A", 3}, {"C", 1}}}, reg);
  EXPECT_EQ(r.items, (S{"A", "B", "C"}));
  ASSERT_EQ(r.ties.size(), 1u);
  EXPECT_EQ(r.ties[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.tie_group_of(0), 1);
  EXPECT_EQ(r.tie_group_of(1), 1);
  EXPECT_EQ(r.tie_group_of(2), 0);
}

TEST(HumanRanking, Errors) {
  const MethodRegistry reg{"A", "B"};
  EXPECT_EQ(CodeOf([&] { HumanRanking({"img", {}}, reg); }), ErrorCode::kNoVotes);
  EXPECT_EQ(CodeOf([&] { HumanRanking({"img", {{"A", 0}}}, reg); }), ErrorCode::kNoVotes);
  EXPECT_EQ(CodeOf([&] { HumanRanking({"img", {{"Z", 2}}}, reg); }), ErrorCode::kUnknownMethod);
}

TEST(MetricRanking, ReproducesReferenceManhattanOrder) {
  // Scores chosen to induce the reference MA order.
  const S order = Row(MetricId::kManhattan).items;
  std::vector<std::pair<std::string, std::optional<double>>> scores;
  for (const auto& m : DefaultMethodRegistry()) {
    const auto pos = std::find(order.begin(), order.end(), m) - order.begin();
    scores.emplace_back(m, 10.0 + static_cast<double>(pos));
  }
  const Ranking r = MetricRanking(TableFor(scores), MetricId::kManhattan, DefaultMethodRegistry());
  EXPECT_EQ(r.items, order);
  EXPECT_EQ(r.metric, MetricId::kManhattan);
  EXPECT_EQ(r.source_label(), "MA");
}

TEST(MetricRanking, LowerIsBetter) {
  const MethodRegistry reg{"A", "B"};
  EXPECT_EQ(MetricRanking(TableFor({{"B", 0.2}, {"A", 0.1}}), MetricId::kManhattan, reg).items,
            (S{"A", "B"}));
}

TEST(MetricRanking, AllEqualIsOneTieGroup) {
  const MethodRegistry reg{"A", "B", "C"};
  const Ranking r =
      MetricRanking(TableFor({{"C", 0.5}, {"B", 0.5}, {"A", 0.5}}), MetricId::kManhattan, reg);
  EXPECT_EQ(r.items, (S{"A", "B", "C"}));
  ASSERT_EQ(r.ties.size(), 1u);
  EXPECT_EQ(r.ties[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(MetricRanking, SkipsMissingCellsAndRows) {
  const MethodRegistry reg{"A", "B", "C"};
  const auto table = TableFor({{"A", std::nullopt}, {"B", 0.3}, {"C", 0.1}});
  EXPECT_EQ(MetricRanking(table, MetricId::kManhattan, reg).items, (S{"C", "B"}));
  EXPECT_EQ(CodeOf([&] { MetricRanking(table, MetricId::kCosine, reg); }),
            ErrorCode::kMissingMetricRow);
  const auto empty = TableFor({{"A", std::nullopt}, {"B", std::nullopt}});
  EXPECT_EQ(CodeOf([&] { MetricRanking(empty, MetricId::kManhattan, reg); }),
            ErrorCode::kMissingMetricRow);
}

TEST(AgreementAtDepth, ReferenceHumanVersusManhattan) {
  const S& h = ReferenceHumanRanking();
  const S& ma = Row(MetricId::kManhattan).items;
  EXPECT_EQ(AgreementAtDepth(h, ma, 1), 0.0);
  EXPECT_DOUBLE_EQ(AgreementAtDepth(h, ma, 5), 4.0 / 5.0);
  for (std::size_t d = 1; d <= h.size(); ++d) EXPECT_EQ(AgreementAtDepth(h, h, d), 1.0);
  EXPECT_EQ(CodeOf([&] { AgreementAtDepth(h, ma, 0); }), ErrorCode::kDepthOutOfRange);
  EXPECT_EQ(CodeOf([&] { AgreementAtDepth(h, ma, 8); }), ErrorCode::kDepthOutOfRange);
}

TEST(RboPositionWeight, ReferencePercentages) {
  struct Case {
    double p;
    double w[3];
  };
  const Case cases[] = {{0.0, {1.0, 0.0, 0.0}},
                        {0.5, {0.5, 0.25, 0.125}},
                        {0.8, {0.2, 0.16, 0.128}},
                        {0.9, {0.1, 0.09, 0.081}},
                        {1.0, {0.0, 0.0, 0.0}}};
  for (const auto& c : cases) {
    for (std::size_t d = 1; d <= 3; ++d) {
      EXPECT_NEAR(RboPositionWeight(c.p, d), c.w[d - 1], 1e-15) << "p=" << c.p << " d=" << d;
    }
  }
}

TEST(RboPositionWeight, DecreasingAndSummingToOne) {
  for (double p : {0.1, 0.5, 0.8, 0.9, 0.99}) {
    double sum = 0.0;
    for (std::size_t d = 1; d <= 20000; ++d) {
      const double w = RboPositionWeight(p, d);
      if (d > 1 && w > std::numeric_limits<double>::min()) {
        ASSERT_LT(w, RboPositionWeight(p, d - 1));
      }
      sum += w;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12) << "p=" << p;
  }
}

TEST(RboSimilarity, ReferenceDistancesAtFullPersistence) {
  for (const auto& row : ReferenceMetricRankings()) {
    const double d = RboDistance(ReferenceHumanRanking(), row.items, 1.0);
    EXPECT_NEAR(d, row.rbo_distance, 5e-5) << MetricAcronym(row.metric);
    EXPECT_NEAR(d, 1.0 - testing::RboOracle(ReferenceHumanRanking(), row.items, 1.0), 1e-15);
  }
  EXPECT_NEAR(RboSimilarity(ReferenceHumanRanking(), Row(MetricId::kManhattan).items, 1.0),
              0.66531, 5e-6);
}

TEST(RboSimilarity, IdenticalLists) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const S s = RandomRanking(rng);
    EXPECT_EQ(RboSimilarity(s, s, 0.0), 1.0);
    EXPECT_EQ(RboSimilarity(s, s, 1.0), 1.0);
    EXPECT_EQ(RboDistance(s, s, 1.0), 0.0);
    for (double p : {0.5, 0.8, 0.9}) {
      EXPECT_NEAR(RboSimilarity(s, s, p), 1.0 - std::pow(p, static_cast<double>(s.size())), 1e-12);
    }
  }
}

TEST(RboSimilarity, MatchesTruncatedSumAndIsSymmetric) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const S s = RandomRanking(rng);
    const S t = RandomRanking(rng);
    const double p = trial % 10 == 0 ? 0.0 : trial % 10 == 1 ? 1.0 : testing::Uniform(rng);
    const double sim = RboSimilarity(s, t, p);
    ASSERT_NEAR(sim, testing::RboOracle(s, t, p), 1e-12) << "trial " << trial;
    ASSERT_NEAR(sim, RboSimilarity(t, s, p), 1e-15);
    ASSERT_GE(sim, 0.0);
    ASSERT_LE(sim, 1.0);
  }
}

TEST(RboSimilarity, Errors) {
  const S a{"A", "B"};
  EXPECT_EQ(CodeOf([&] { RboSimilarity(S{}, a, 0.5); }), ErrorCode::kEmptyRanking);
  EXPECT_EQ(CodeOf([&] { RboSimilarity(a, a, 1.5); }), ErrorCode::kPersistenceOutOfRange);
  EXPECT_EQ(CodeOf([&] { RboSimilarity(a, a, -0.1); }), ErrorCode::kPersistenceOutOfRange);
  EXPECT_EQ(CodeOf([&] { RboSimilarity(S{"A", "A"}, a, 0.5); }), ErrorCode::kInvalidArgument);
}

TEST(BestMetricReport, SingleWinner) {
  const std::vector<RboEntry> entries{{"i1", MetricId::kManhattan, 1.0, 0.2},
                                      {"i1", MetricId::kCosine, 1.0, 0.4}};
  const std::vector<double> ps{1.0};
  const std::vector<MetricId> ms{MetricId::kManhattan, MetricId::kCosine};
  const RboReport r = BestMetricReport(entries, ps, ms);
  ASSERT_EQ(r.best.size(), 1u);
  EXPECT_EQ(r.best[0].metrics, std::vector<MetricId>{MetricId::kManhattan});
  ASSERT_EQ(r.counts.size(), 2u);
  EXPECT_EQ(r.counts[0], (BestCount{MetricId::kManhattan, 1.0, 1}));
  EXPECT_EQ(r.counts[1], (BestCount{MetricId::kCosine, 1.0, 0}));
}

TEST(BestMetricReport, TiesCountForEveryone) {
  // Reference rankings: seven metrics share 0.5980 and MA is alone at the top.
  std::vector<RboEntry> entries;
  for (const auto& row : ReferenceMetricRankings()) {
    for (double p : {0.5, 1.0}) {
      entries.push_back({"n02085620_1312", row.metric, p,
                         RboDistance(ReferenceHumanRanking(), row.items, p)});
    }
  }
  entries.push_back({"other", MetricId::kCosine, 1.0, 0.1});
  entries.push_back({"other", MetricId::kEuclidean, 1.0, 0.1});
  const std::vector<double> ps{0.5, 1.0};
  const RboReport r = BestMetricReport(entries, ps);
  int at_one = 0;
  for (const auto& c : r.counts) {
    if (c.p == 1.0) at_one += c.count;
    if (c.p == 1.0 && c.metric == MetricId::kManhattan) {
      EXPECT_EQ(c.count, 1);
    }
  }
  EXPECT_EQ(at_one, 3);  // three winners over two images
  ASSERT_EQ(r.counts.size(), 24u);
  EXPECT_EQ(r.counts[0].metric, MetricId::kWeightedJaccard);
  EXPECT_EQ(r.counts[0].p, 0.5);
  EXPECT_EQ(r.counts[1].p, 1.0);
}

}  // namespace

}  // namespace salign
