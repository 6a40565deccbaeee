// Copyright 2026 The Collusion Lab Authors
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

#include "collusion/qlearning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace collusion {
namespace {

// Scalar reference kept separate from the table code on purpose.
double ReferenceUpdate(double q, double r, double max_next, double alpha,
                       double delta) {
  const double target = r + delta * max_next;
  return (1.0 - alpha) * q + alpha * target;
}

PriceGrid TestGrid() { return BuildPriceGrid(1.0, 1.25); }

TEST(QTableTest, ShapeAndZeroInit) {
  QTable q(0.15, 0.95);
  EXPECT_EQ(q.values().size(), 225u * 15u);
  for (double v : q.values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(QTable::StateIndex(14, 14), 224);
}

TEST(QTableTest, ZeroTableUnitReward) {
  QTable q(0.15, 0.95);
  q.Update(3, 4, 1.0, 10);
  EXPECT_DOUBLE_EQ(q.at(3, 4), 0.15);
}

TEST(QTableTest, HandExample) {
  QTable q(0.15, 0.95);
  q.at(5, 2) = 2.0;
  q.at(7, 9) = 2.0;
  q.Update(5, 2, 0.0, 7);
  EXPECT_NEAR(q.at(5, 2), 1.985, 1e-15);
}

TEST(QTableTest, ZeroTdErrorLeavesTableUnchanged) {
  QTable q(0.15, 0.95);
  q.at(1, 1) = 3.0;
  q.at(2, 6) = 1.0;
  const std::vector<double> before = q.values();
  q.Update(1, 1, 3.0 - 0.95 * 1.0, 2);
  EXPECT_EQ(q.values(), before);
}

TEST(QTableTest, OnlyTouchedEntryChanges) {
  QTable q(0.15, 0.95);
  q.at(9, 9) = 1.0;
  std::vector<double> before = q.values();
  q.Update(4, 3, 0.7, 9);
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (i == 4u * 15u + 3u) continue;
    ASSERT_EQ(q.values()[i], before[i]);
  }
}

TEST(QTableTest, BadIndicesThrow) {
  QTable q(0.15, 0.95);
  EXPECT_THROW(q.Update(225, 0, 0.0, 0), std::out_of_range);
  EXPECT_THROW(q.Update(0, 15, 0.0, 0), std::out_of_range);
  EXPECT_THROW(q.Update(0, 0, 0.0, -1), std::out_of_range);
}

TEST(QTableTest, MatchesScalarReferenceOnRandomTuples) {
  Rng rng(99);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> s_dist(0, 224), a_dist(0, 14);
  QTable q(0.15, 0.95);
  for (int s = 0; s < 225; ++s) {
    for (int a = 0; a < 15; ++a) q.at(s, a) = val(rng);
  }
  for (int i = 0; i < 1000; ++i) {
    const int s = s_dist(rng), a = a_dist(rng), s2 = s_dist(rng);
    const double r = val(rng);
    double max_next = q.at(s2, 0);
    for (int b = 1; b < 15; ++b) max_next = std::max(max_next, q.at(s2, b));
    const double expect = ReferenceUpdate(q.at(s, a), r, max_next, 0.15, 0.95);
    q.Update(s, a, r, s2);
    ASSERT_NEAR(q.at(s, a), expect, 1e-12);
  }
}

TEST(QTableTest, GreedyTiesGoLow) {
  QTable q(0.15, 0.95);
  EXPECT_EQ(q.Greedy(0), 0);
  q.at(0, 6) = 1.0;
  q.at(0, 11) = 1.0;
  EXPECT_EQ(q.Greedy(0), 6);
}

TEST(QTableTest, GreedyInvariantToShiftAndScale) {
  Rng rng(4);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    QTable q(0.15, 0.95);
    for (int a = 0; a < 15; ++a) q.at(0, a) = val(rng);
    const int base = q.Greedy(0);
    QTable shifted(0.15, 0.95);
    for (int a = 0; a < 15; ++a) shifted.at(0, a) = 2.5 * q.at(0, a) + 7.0;
    EXPECT_EQ(shifted.Greedy(0), base);
  }
}

TEST(EpsilonTest, Schedule) {
  EXPECT_EQ(EpsilonAt(0, 1.5e-4), 1.0);
  EXPECT_NEAR(EpsilonAt(10'000, 1.5e-4), 0.2231, 1e-4);
  for (std::int64_t t = 0; t < 1000; t += 37) {
    EXPECT_LT(EpsilonAt(t + 1, 1.5e-4), EpsilonAt(t, 1.5e-4));
  }
}

TEST(EpsilonTest, GreedyFrequency) {
  QTable q(0.15, 0.95);
  q.at(0, 3) = 1.0;
  Rng rng(12);
  const double eps = 0.3;
  int explored = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    // Exploration lands on the greedy action 1/15 of the time.
    if (EpsilonGreedy(q, 0, eps, rng) != 3) ++explored;
  }
  const double rate = static_cast<double>(explored) / n * 15.0 / 14.0;
  EXPECT_NEAR(rate, eps, 0.01);
}

TEST(EpsilonTest, Limits) {
  QTable q(0.15, 0.95);
  q.at(0, 9) = 1.0;
  Rng rng(3);
  std::vector<int> counts(15, 0);
  for (int i = 0; i < 15'000; ++i) ++counts[EpsilonGreedy(q, 0, 1.0, rng)];
  for (int c : counts) EXPECT_NEAR(c, 1000, 150);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(EpsilonGreedy(q, 0, 0.0, rng), 9);
}

TEST(QLearningAgentTest, PostsGridPoints) {
  const PriceGrid grid = TestGrid();
  QLearningAgent agent(grid, QLearningParams{});
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const double p = agent.Act({grid[3], grid[5], t}, rng);
    EXPECT_EQ(grid[grid.NearestIndex(p)], p);
  }
}

TEST(QLearningAgentTest, OffGridOpponentSnapsToNearest) {
  const PriceGrid grid = TestGrid();
  QLearningAgent agent(grid, QLearningParams{});
  const double off = grid[4] + 0.4 * (grid[5] - grid[4]);
  EXPECT_EQ(agent.StateOf({grid[2], off, 0}), QTable::StateIndex(2, 4));
}

TEST(QLearningAgentTest, LearnUpdatesVisitedCell) {
  const PriceGrid grid = TestGrid();
  QLearningAgent agent(grid, QLearningParams{});
  Rng rng(1);
  Feedback fb;
  fb.obs = {grid[1], grid[2], 0};
  fb.own_price = grid[7];
  fb.opp_price = grid[8];
  fb.profit = 1.0;
  fb.next_obs = {grid[7], grid[8], 1};
  agent.Learn(fb, rng);
  EXPECT_DOUBLE_EQ(agent.table().at(QTable::StateIndex(1, 2), 7), 0.15);
}

}  // namespace
}  // namespace collusion
