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

#include "collusion/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "collusion/benchmarks.h"
#include "collusion/error.h"

namespace collusion {
namespace {

double TailMean(const std::vector<double>& xs, std::int64_t window) {
  double total = 0.0;
  for (auto it = xs.end() - window; it != xs.end(); ++it) total += *it;
  return total / static_cast<double>(window);
}

}  // namespace

WindowStats ComputeWindowStats(const std::array<std::vector<double>, 2>& prices,
                               const std::array<std::vector<double>, 2>& profits,
                               std::int64_t window) {
  WindowStats out;
  out.window = window;
  for (int f = 0; f < 2; ++f) {
    const auto n = static_cast<std::int64_t>(prices[f].size());
    if (static_cast<std::int64_t>(profits[f].size()) != n) {
      throw ModelError("window stats: price and profit series differ in length");
    }
    if (window < 1 || window > n) {
      throw ModelError("window stats: window " + std::to_string(window) +
                       " outside [1, " + std::to_string(n) + "]");
    }
    out.mean_price[f] = TailMean(prices[f], window);
    out.mean_profit[f] = TailMean(profits[f], window);
  }
  return out;
}

double DeltaIndex(double pi_bar, double pi_nash, double pi_mono) {
  if (pi_mono == pi_nash) {
    throw DegenerateBenchmarkError("delta index: monopoly and Nash profits coincide");
  }
  return (pi_bar - pi_nash) / (pi_mono - pi_nash);
}

double Rpdi(double p_bar, double p_nash, double p_mono) {
  if (p_mono == p_nash) {
    throw DegenerateBenchmarkError("rpdi: monopoly and Nash prices coincide");
  }
  return (p_bar - p_nash) / (p_mono - p_nash);
}

std::optional<double> EfficiencyRatio(double delta, double rpdi) {
  if (rpdi == 0.0) return std::nullopt;
  return delta / rpdi;
}

double DeltaChange(double delta_shock, double delta_baseline) {
  return delta_shock - delta_baseline;
}

double LogitConsumerSurplus(const std::array<double, 2>& prices,
                            const MarketParams& params,
                            const ShockRegime& regime, std::int64_t samples,
                            std::uint64_t seed) {
  if (params.model != MarketModel::kLogit) {
    throw ModelError("consumer surplus is defined for the logit model only");
  }
  const std::vector<ShockPair> draws = StationaryDraws(regime, samples, seed);
  const double u0 = params.a0 / params.mu;
  double total = 0.0;
  for (const ShockPair& z : draws) {
    const double u1 = (params.a - prices[0] + z[0]) / params.mu;
    const double u2 = (params.a - prices[1] + z[1]) / params.mu;
    const double m = std::max({u0, u1, u2});
    total += m + std::log(std::exp(u0 - m) + std::exp(u1 - m) + std::exp(u2 - m));
  }
  return params.mu * total / static_cast<double>(draws.size());
}

double CsChangePct(double cs, double cs_nash) {
  return 100.0 * (cs - cs_nash) / std::abs(cs_nash);
}

}  // namespace collusion
