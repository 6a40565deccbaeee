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

#include "collusion/market.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "collusion/error.h"

namespace collusion {

std::string_view MarketName(MarketModel model) {
  switch (model) {
    case MarketModel::kLogit:
      return "logit";
    case MarketModel::kHotelling:
      return "hotelling";
    case MarketModel::kLinear:
      return "linear";
  }
  return "unknown";
}

MarketModel ParseMarket(std::string_view name) {
  if (name == "logit") return MarketModel::kLogit;
  if (name == "hotelling") return MarketModel::kHotelling;
  if (name == "linear") return MarketModel::kLinear;
  throw ConfigError("unknown market '" + std::string(name) +
                    "' (expected logit, hotelling or linear)");
}

MarketParams MarketParams::Preset(MarketModel model) {
  MarketParams p;
  p.model = model;
  switch (model) {
    case MarketModel::kLogit:
      p.a = 2.0;
      p.a0 = 0.0;
      p.mu = 0.25;
      p.c = 1.0;
      // Hard-coded no-shock benchmarks used to build the grid.
      p.p_nash = 1.473;
      p.p_mono = 1.925;
      break;
    case MarketModel::kHotelling:
      p.v = 1.75;
      p.theta = 1.0;
      p.c = 0.0;
      p.p_nash = 1.00;
      p.p_mono = 1.25;
      break;
    case MarketModel::kLinear:
      p.a = 1.0;
      p.d = 0.25;
      p.c = 0.0;
      p.p_nash = p.a * (1.0 - p.d) / (2.0 - p.d);
      p.p_mono = 0.5 * p.a;
      break;
  }
  return p;
}

int PriceGrid::NearestIndex(double price) const {
  int best = 0;
  double best_dist = std::abs(price - points_[0]);
  for (int i = 1; i < kGridSize; ++i) {
    const double dist = std::abs(price - points_[i]);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

double PriceGrid::Normalize(double price) const {
  const double half = 0.5 * (back() - front());
  if (half <= 0.0) return 0.0;
  return (price - 0.5 * (back() + front())) / half;
}

PriceGrid BuildPriceGrid(double p_nash, double p_mono,
                         GridUpperEndpoint upper) {
  if (!(p_mono >= p_nash)) {
    throw ModelError("price grid: monopoly price " + std::to_string(p_mono) +
                     " is below Nash price " + std::to_string(p_nash));
  }
  const double gap = p_mono - p_nash;
  const double lo = p_nash - 0.15 * gap;
  const double hi = upper == GridUpperEndpoint::kSymmetric
                        ? p_mono + 0.15 * gap
                        : p_mono + 0.15 + gap;
  std::array<double, kGridSize> pts{};
  const double step = (hi - lo) / (kGridSize - 1);
  for (int i = 0; i < kGridSize; ++i) pts[i] = lo + step * i;
  pts[kGridSize - 1] = hi;
  return PriceGrid(pts);
}

LogitShares ComputeLogitShares(double p1, double p2, double z1, double z2,
                               const MarketParams& params) {
  const double u1 = (params.a - p1 + z1) / params.mu;
  const double u2 = (params.a - p2 + z2) / params.mu;
  const double u0 = params.a0 / params.mu;
  const double m = std::max({u1, u2, u0});
  const double e1 = std::exp(u1 - m);
  const double e2 = std::exp(u2 - m);
  const double e0 = std::exp(u0 - m);
  const double total = e1 + e2 + e0;
  return {e1 / total, e2 / total, e0 / total};
}

Demands HotellingDemands(double p1, double p2, double z1, double z2,
                         const MarketParams& params) {
  const double x = ((p2 - p1) + (z1 - z2) + params.theta) / (2.0 * params.theta);
  const double q1 = std::clamp(x, 0.0, 1.0);
  return {q1, 1.0 - q1};
}

Demands LinearDemands(double p1, double p2, double z1, double z2,
                      const MarketParams& params) {
  const double denom = 1.0 - params.d * params.d;
  if (denom == 0.0) {
    throw ModelError("linear demand: substitution parameter d must satisfy d^2 != 1");
  }
  const double a1 = params.a + z1;
  const double a2 = params.a + z2;
  const double q1 = ((a1 - p1) - params.d * (a1 - p2)) / denom;
  const double q2 = ((a2 - p2) - params.d * (a2 - p1)) / denom;
  return {std::max(q1, 0.0), std::max(q2, 0.0)};
}

MarketOutcome Step(const MarketParams& params, double p1, double p2,
                   const ShockPair& z) {
  MarketOutcome out;
  switch (params.model) {
    case MarketModel::kLogit: {
      const LogitShares s = ComputeLogitShares(p1, p2, z[0], z[1], params);
      out.quantities = {s.s1, s.s2};
      out.share_outside = s.s0;
      break;
    }
    case MarketModel::kHotelling: {
      const Demands q = HotellingDemands(p1, p2, z[0], z[1], params);
      out.quantities = {q.q1, q.q2};
      break;
    }
    case MarketModel::kLinear: {
      const Demands q = LinearDemands(p1, p2, z[0], z[1], params);
      out.quantities = {q.q1, q.q2};
      break;
    }
  }
  out.profits = {(p1 - params.c) * out.quantities[0],
                 (p2 - params.c) * out.quantities[1]};
  return out;
}

double FirmProfit(const MarketParams& params, int firm, double own,
                  double rival, const ShockPair& z) {
  if (firm == 0) return Step(params, own, rival, z).profits[0];
  return Step(params, rival, own, z).profits[1];
}

}  // namespace collusion
