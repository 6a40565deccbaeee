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

#include "collusion/config.h"

#include <cstdlib>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "collusion/error.h"

namespace collusion {
namespace {

std::string ErrorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(DefaultsTest, PaperGrid) {
  const ExperimentConfig c = Preset("paper_grid");
  EXPECT_EQ(c.pairings.size(), 10u);
  EXPECT_EQ(c.markets.size(), 3u);
  EXPECT_EQ(c.regimes.size(), 4u);
  EXPECT_EQ(c.seeds, 20);
  EXPECT_EQ(c.horizon, 10'000);
  EXPECT_EQ(c.window, 1'000);
  EXPECT_EQ(c.benchmark_samples, 100'000);
  EXPECT_NO_THROW(Validate(c));
}

TEST(DefaultsTest, PairingsAreUnorderedAndComplete) {
  const auto p = DefaultPairings();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      EXPECT_FALSE(p[i] == p[j]);
      EXPECT_FALSE(p[i].first == p[j].second && p[i].second == p[j].first);
    }
  }
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(p[i].first, p[i].second);
}

TEST(DefaultsTest, SingleCell) {
  const ExperimentConfig c = Preset("single_cell");
  ASSERT_EQ(c.pairings.size(), 1u);
  EXPECT_EQ(c.pairings[0].first, AgentKind::kQLearning);
  EXPECT_EQ(c.markets, std::vector<MarketModel>{MarketModel::kHotelling});
  EXPECT_EQ(c.regimes, std::vector<RegimeName>{RegimeName::kNone});
}

TEST(OverrideTest, SetsNestedKeys) {
  ExperimentConfig c;
  ApplyOverride(c, "qlearning.alpha=0.2");
  ApplyOverride(c, "ddqn.hidden=32,16");
  ApplyOverride(c, "pairings=qlearning:pso,ddpg:ddpg");
  ApplyOverride(c, "regimes=none,scheme_b");
  ApplyOverride(c, "grid.upper_endpoint=literal");
  EXPECT_EQ(c.hyper.qlearning.alpha, 0.2);
  EXPECT_EQ(c.hyper.ddqn.hidden, (std::vector<int>{32, 16}));
  ASSERT_EQ(c.pairings.size(), 2u);
  EXPECT_EQ(c.pairings[0].second, AgentKind::kPso);
  EXPECT_EQ(c.regimes.back(), RegimeName::kSchemeB);
  EXPECT_EQ(c.grid_upper, GridUpperEndpoint::kLiteral);
}

TEST(OverrideTest, UnknownKeyRejected) {
  ExperimentConfig c;
  EXPECT_NE(ErrorOf([&] { ApplyOverride(c, "qlearning.gamma=0.5"); }).find("qlearning.gamma"),
            std::string::npos);
  EXPECT_THROW(ApplyOverride(c, "seeds"), ConfigError);
}

TEST(OverrideTest, BadRegimeNamed) {
  ExperimentConfig c;
  EXPECT_NE(ErrorOf([&] { ApplyOverride(c, "regimes=none,scheme_d"); }).find("scheme_d"),
            std::string::npos);
}

TEST(OverrideTest, BadNumbers) {
  ExperimentConfig c;
  EXPECT_THROW(ApplyOverride(c, "seeds=two"), ConfigError);
  EXPECT_THROW(ApplyOverride(c, "qlearning.alpha=fast"), ConfigError);
  EXPECT_THROW(ApplyOverride(c, "swap_roles=maybe"), ConfigError);
}

TEST(YamlTest, NestedSectionsAndLists) {
  const ExperimentConfig c = ParseConfigYaml(
      "markets: [linear]\n"
      "regimes: [scheme_c]\n"
      "pairings:\n"
      "  - [pso, pso]\n"
      "  - qlearning:ddqn\n"
      "seeds: 3\n"
      "pso:\n"
      "  particles: 12\n"
      "  keep_incumbent: false\n"
      "benchmark:\n"
      "  mc_samples: 20000\n");
  EXPECT_EQ(c.markets, std::vector<MarketModel>{MarketModel::kLinear});
  ASSERT_EQ(c.pairings.size(), 2u);
  EXPECT_EQ(c.pairings[1].second, AgentKind::kDdqn);
  EXPECT_EQ(c.seeds, 3);
  EXPECT_EQ(c.hyper.pso.particles, 12);
  EXPECT_FALSE(c.hyper.pso.keep_incumbent);
  EXPECT_EQ(c.benchmark_samples, 20'000);
}

TEST(YamlTest, PresetBase) {
  const ExperimentConfig c = ParseConfigYaml("preset: single_cell\nseeds: 4\n");
  EXPECT_EQ(c.pairings.size(), 1u);
  EXPECT_EQ(c.seeds, 4);
}

TEST(YamlTest, DiagnosticsCarryLineAndKey) {
  const std::string msg =
      ErrorOf([] { ParseConfigYaml("seeds: 2\nhorizon: 100\nqlearning:\n  alpah: 0.1\n"); });
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("qlearning.alpah"), std::string::npos) << msg;
  const std::string bad = ErrorOf([] { ParseConfigYaml("seeds: 2\nregimes: [scheme_z]\n"); });
  EXPECT_NE(bad.find("line 2"), std::string::npos) << bad;
  EXPECT_NE(bad.find("scheme_z"), std::string::npos) << bad;
}

TEST(YamlTest, MalformedYaml) {
  EXPECT_THROW(ParseConfigYaml("seeds: [1, 2\n"), ConfigError);
  EXPECT_THROW(ParseConfigYaml("- 1\n- 2\n"), ConfigError);
}

TEST(ValidateTest, Rejections) {
  ExperimentConfig c;
  c.window = 20'000;
  EXPECT_NE(ErrorOf([&] { Validate(c); }).find("horizon"), std::string::npos);
  c = ExperimentConfig{};
  c.seeds = 0;
  EXPECT_THROW(Validate(c), ConfigError);
  c = ExperimentConfig{};
  c.correlated_shocks = true;
  EXPECT_THROW(Validate(c), ConfigError);
  c = ExperimentConfig{};
  c.benchmark_samples = 500;
  EXPECT_THROW(Validate(c), ConfigError);
}

TEST(EnvironmentTest, UpperCasedKeys) {
  ExperimentConfig c;
  setenv("COLLUSION_SEEDS", "7", 1);
  setenv("COLLUSION_QLEARNING_BETA", "0.001", 1);
  ApplyEnvironment(c);
  unsetenv("COLLUSION_SEEDS");
  unsetenv("COLLUSION_QLEARNING_BETA");
  EXPECT_EQ(c.seeds, 7);
  EXPECT_EQ(c.hyper.qlearning.beta, 0.001);
}

TEST(FormatTest, EveryKeyPrintedAndReparsable) {
  const ExperimentConfig c;
  const std::string text = FormatConfig(c);
  for (const std::string& key : ConfigKeys()) {
    EXPECT_NE(text.find(key + ":"), std::string::npos) << key;
  }
  ExperimentConfig round;
  for (const auto& [key, value] : ResolvedKeys(c)) SetKey(round, key, value);
  EXPECT_EQ(FormatConfig(round), text);
}

}  // namespace
}  // namespace collusion
