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

#ifndef COLLUSION_METRICS_H_
#define COLLUSION_METRICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "collusion/market.h"
#include "collusion/shocks.h"

namespace collusion {

// Arithmetic means over the final `window` periods of a run.
struct WindowStats {
  std::array<double, 2> mean_price{};
  std::array<double, 2> mean_profit{};
  std::int64_t window = 0;
};

// prices[f][t], profits[f][t]. Throws ModelError if window is not in
// [1, periods].
WindowStats ComputeWindowStats(const std::array<std::vector<double>, 2>& prices,
                               const std::array<std::vector<double>, 2>& profits,
                               std::int64_t window);

// (pi_bar - pi_N) / (pi_M - pi_N). Throws DegenerateBenchmarkError when
// pi_M == pi_N.
double DeltaIndex(double pi_bar, double pi_nash, double pi_mono);
// (p_bar - p_N) / (p_M - p_N).
double Rpdi(double p_bar, double p_nash, double p_mono);
// delta / rpdi; empty when rpdi == 0.
std::optional<double> EfficiencyRatio(double delta, double rpdi);
double DeltaChange(double delta_shock, double delta_baseline);

// Expected inclusive value mu * E_z[ln(e^u0 + e^u1 + e^u2)] at the given
// prices, over stationary shock draws.
double LogitConsumerSurplus(const std::array<double, 2>& prices,
                            const MarketParams& params,
                            const ShockRegime& regime, std::int64_t samples,
                            std::uint64_t seed);

// 100 (cs - cs_nash) / |cs_nash|.
double CsChangePct(double cs, double cs_nash);

}  // namespace collusion

#endif  // COLLUSION_METRICS_H_
