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

#include "collusion/shocks.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "collusion/error.h"

namespace collusion {
namespace {

struct PathStats {
  double mean[2];
  double var[2];
  double lag1[2];
  double cross;
};

PathStats Simulate(const ShockRegime& r, int steps, std::uint64_t seed) {
  ShockState s = ShockState::Seeded(seed, seed + 1000);
  std::vector<double> z[2];
  for (int t = 0; t < steps; ++t) {
    Ar1Step(s, r);
    z[0].push_back(s.z[0]);
    z[1].push_back(s.z[1]);
  }
  PathStats out{};
  const double n = steps;
  for (int f = 0; f < 2; ++f) {
    double m = 0.0;
    for (double x : z[f]) m += x;
    m /= n;
    double v = 0.0, c = 0.0;
    for (int t = 0; t < steps; ++t) {
      v += (z[f][t] - m) * (z[f][t] - m);
      if (t > 0) c += (z[f][t] - m) * (z[f][t - 1] - m);
    }
    out.mean[f] = m;
    out.var[f] = v / n;
    out.lag1[f] = c / v;
  }
  double cov = 0.0;
  for (int t = 0; t < steps; ++t) {
    cov += (z[0][t] - out.mean[0]) * (z[1][t] - out.mean[1]);
  }
  out.cross = cov / n / std::sqrt(out.var[0] * out.var[1]);
  return out;
}

TEST(RegimeTest, ExactParameters) {
  EXPECT_EQ(RegimeParams(RegimeName::kNone).rho, 0.0);
  EXPECT_EQ(RegimeParams(RegimeName::kNone).sigma_eta, 0.0);
  EXPECT_EQ(RegimeParams(RegimeName::kSchemeA).rho, 0.3);
  EXPECT_EQ(RegimeParams(RegimeName::kSchemeA).sigma_eta, 0.5);
  EXPECT_EQ(RegimeParams(RegimeName::kSchemeB).rho, 0.95);
  EXPECT_EQ(RegimeParams(RegimeName::kSchemeB).sigma_eta, 0.05);
  EXPECT_EQ(RegimeParams(RegimeName::kSchemeC).rho, 0.9);
  EXPECT_EQ(RegimeParams(RegimeName::kSchemeC).sigma_eta, 0.3);
}

TEST(RegimeTest, LabelsRoundTrip) {
  for (RegimeName r : kAllRegimes) EXPECT_EQ(ParseRegime(RegimeLabel(r)), r);
  EXPECT_THROW(ParseRegime("scheme_d"), ConfigError);
}

TEST(Ar1Test, NoShockStaysAtZero) {
  ShockState s = ShockState::Seeded(1, 2);
  for (int t = 0; t < 100; ++t) {
    Ar1Step(s, RegimeParams(RegimeName::kNone));
    EXPECT_EQ(s.z[0], 0.0);
    EXPECT_EQ(s.z[1], 0.0);
  }
}

TEST(Ar1Test, DeterministicDecay) {
  ShockState s = ShockState::Seeded(1, 2);
  s.z = {1.0, 1.0};
  Ar1Step(s, ShockRegime{RegimeName::kSchemeC, 0.9, 0.0});
  EXPECT_DOUBLE_EQ(s.z[0], 0.9);
  EXPECT_DOUBLE_EQ(s.z[1], 0.9);
}

TEST(Ar1Test, SchemeBStationaryVariance) {
  const ShockRegime r = RegimeParams(RegimeName::kSchemeB);
  EXPECT_NEAR(r.StationaryVariance(), 0.0025 / 0.0975, 1e-15);
  const PathStats st = Simulate(r, 100'000, 17);
  EXPECT_NEAR(st.var[0], 0.02564, 0.1 * 0.02564);
}

TEST(Ar1Test, MomentsForEveryScheme) {
  for (RegimeName name : {RegimeName::kSchemeA, RegimeName::kSchemeB, RegimeName::kSchemeC}) {
    const ShockRegime r = RegimeParams(name);
    const PathStats st = Simulate(r, 200'000, 23);
    const double var = r.StationaryVariance();
    // Effective sample size shrinks with persistence.
    const double se = std::sqrt(var / 200'000.0 * (1.0 + r.rho) / (1.0 - r.rho));
    for (int f = 0; f < 2; ++f) {
      EXPECT_NEAR(st.mean[f], 0.0, 3.0 * se) << RegimeLabel(name);
      EXPECT_NEAR(st.var[f], var, 0.1 * var) << RegimeLabel(name);
      EXPECT_NEAR(st.lag1[f], r.rho, 0.02) << RegimeLabel(name);
    }
    EXPECT_NEAR(st.cross, 0.0, 0.02 * (1.0 + r.rho) / (1.0 - r.rho)) << RegimeLabel(name);
  }
}

TEST(Ar1Test, FirmStreamsUncorrelatedAtLowPersistence) {
  const PathStats st = Simulate(RegimeParams(RegimeName::kSchemeA), 100'000, 31);
  EXPECT_NEAR(st.cross, 0.0, 0.02);
}

TEST(Ar1Test, SameSeedSamePath) {
  ShockState a = ShockState::Seeded(5, 6);
  ShockState b = ShockState::Seeded(5, 6);
  for (int t = 0; t < 1000; ++t) {
    Ar1Step(a, RegimeParams(RegimeName::kSchemeC));
    Ar1Step(b, RegimeParams(RegimeName::kSchemeC));
    ASSERT_EQ(a.z[0], b.z[0]);
    ASSERT_EQ(a.z[1], b.z[1]);
  }
}

}  // namespace
}  // namespace collusion
