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

#include "collusion/tables.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace collusion {
namespace {

namespace fs = std::filesystem;

CellSummary Homogeneous(AgentKind a, MarketModel m, RegimeName r, double delta,
                        double rpdi, double price) {
  CellSummary s;
  s.cell = {a, a, m, r};
  s.seeds = 5;
  s.benchmarks.p_nash = 1.473;
  s.benchmarks.p_mono = 1.925;
  for (int f = 0; f < 2; ++f) {
    s.firms[f].agent = a;
    s.firms[f].delta.mean = delta + (f ? 0.02 : -0.02);
    s.firms[f].rpdi.mean = rpdi;
    s.firms[f].price.mean = price;
  }
  if (m == MarketModel::kLogit) s.cs_change_pct = -12.5;
  return s;
}

const std::string* Find(const std::vector<TableFile>& files, const std::string& name) {
  for (const auto& [path, body] : files) {
    if (path == name) return &body;
  }
  return nullptr;
}

int Lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

TEST(TablesTest, NineTablesAndScatter) {
  const auto files = MakeTables({});
  EXPECT_EQ(files.size(), 10u);
  int tables = 0;
  for (const auto& [path, body] : files) {
    if (path.rfind("tables/table_", 0) == 0) ++tables;
    EXPECT_EQ(Lines(body), 1) << path;  // header only
  }
  EXPECT_EQ(tables, 9);
  EXPECT_NE(Find(files, "scatter_delta_rpdi.csv"), nullptr);
}

TEST(TablesTest, BaselineUsesTwoFirmMeanAndMarksMissing) {
  const auto files = MakeTables(
      {Homogeneous(AgentKind::kPso, MarketModel::kLogit, RegimeName::kNone, 0.33, 0.22, 1.57)});
  const std::string* base = Find(files, "tables/table_baseline.csv");
  ASSERT_NE(base, nullptr);
  EXPECT_NE(base->find("pso,0.3300,0.2200,NA,NA,NA,NA"), std::string::npos) << *base;
  const std::string* eff = Find(files, "tables/table_efficiency.csv");
  EXPECT_NE(eff->find("1.5000"), std::string::npos) << *eff;
}

TEST(TablesTest, LogitPricesCarryBenchmarkRows) {
  const auto files = MakeTables(
      {Homogeneous(AgentKind::kQLearning, MarketModel::kLogit, RegimeName::kNone, 0.36, 0.4, 1.65)});
  const std::string* prices = Find(files, "tables/table_logit_prices.csv");
  ASSERT_NE(prices, nullptr);
  EXPECT_NE(prices->find("Nash (Shock-Adj.)"), std::string::npos);
  EXPECT_NE(prices->find("1.4730"), std::string::npos);
  const std::string* cs = Find(files, "tables/table_consumer_surplus.csv");
  EXPECT_NE(cs->find("-12.5000"), std::string::npos) << *cs;
}

TEST(TablesTest, DeltaChangeFromOwnBaseline) {
  const auto files = MakeTables(
      {Homogeneous(AgentKind::kDdqn, MarketModel::kLogit, RegimeName::kNone, 0.42, 0.3, 1.6),
       Homogeneous(AgentKind::kDdqn, MarketModel::kLogit, RegimeName::kSchemeA, -1.49, -0.3, 1.6)});
  const std::string* dd = Find(files, "tables/table_delta_change.csv");
  ASSERT_NE(dd, nullptr);
  EXPECT_NE(dd->find("-1.9100"), std::string::npos) << *dd;
}

TEST(TablesTest, HeterogeneousBlocksPerFirm) {
  CellSummary s;
  s.cell = {AgentKind::kQLearning, AgentKind::kDdpg, MarketModel::kHotelling, RegimeName::kNone};
  s.firms[0].agent = AgentKind::kQLearning;
  s.firms[0].delta.mean = -0.29;
  s.firms[1].agent = AgentKind::kDdpg;
  s.firms[1].delta.mean = 0.35;
  const auto files = MakeTables({s});
  const std::string* het = Find(files, "tables/table_heterogeneous.csv");
  ASSERT_NE(het, nullptr);
  EXPECT_NE(het->find("-0.2900"), std::string::npos) << *het;
  EXPECT_NE(het->find("0.3500"), std::string::npos) << *het;
  const std::string* scatter = Find(files, "scatter_delta_rpdi.csv");
  EXPECT_EQ(Lines(*scatter), 3);
}

TEST(TablesTest, ByteIdenticalRewrites) {
  const std::vector<CellSummary> s = {
      Homogeneous(AgentKind::kPso, MarketModel::kHotelling, RegimeName::kSchemeB, 0.2, 0.25, 1.06)};
  const fs::path dir = fs::temp_directory_path() / "collusion_tables_test";
  fs::remove_all(dir);
  EXPECT_TRUE(WriteTables(s, dir.string()).empty());
  std::ifstream in(dir / "tables" / "table_shock_hotelling.csv");
  std::stringstream first;
  first << in.rdbuf();
  EXPECT_TRUE(WriteTables(s, dir.string()).empty());
  std::ifstream again(dir / "tables" / "table_shock_hotelling.csv");
  std::stringstream second;
  second << again.rdbuf();
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(first.str(), *Find(MakeTables(s), "tables/table_shock_hotelling.csv"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace collusion
