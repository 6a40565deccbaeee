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

#ifndef COLLUSION_MARKET_H_
#define COLLUSION_MARKET_H_

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace collusion {

enum class MarketModel { kLogit, kHotelling, kLinear };

// "logit", "hotelling", "linear".
std::string_view MarketName(MarketModel model);
MarketModel ParseMarket(std::string_view name);  // throws ConfigError

// Calibration of one duopoly demand model. Only the fields relevant to
// `model` are read.
struct MarketParams {
  MarketModel model = MarketModel::kLogit;
  double a = 0.0;      // Logit quality index / Linear intercept.
  double a0 = 0.0;     // Logit outside option.
  double mu = 1.0;     // Logit horizontal differentiation (> 0).
  double v = 0.0;      // Hotelling valuation.
  double theta = 1.0;  // Hotelling transport cost (> 0).
  double d = 0.0;      // Linear substitution, in [0, 1).
  double c = 0.0;      // Marginal cost.
  double p_nash = 0.0;
  double p_mono = 0.0;

  static MarketParams Preset(MarketModel model);
};

// Two firms, one latent shock each.
using ShockPair = std::array<double, 2>;

inline constexpr int kGridSize = 15;

// How the top grid point is placed relative to the monopoly price.
//   kSymmetric: p_15 = p_M + 0.15 (p_M - p_N), mirroring p_1.
//   kLiteral:   p_15 = p_M + 0.15 + (p_M - p_N).
enum class GridUpperEndpoint { kSymmetric, kLiteral };

class PriceGrid {
 public:
  explicit PriceGrid(const std::array<double, kGridSize>& points)
      : points_(points) {}

  double operator[](int i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  std::span<const double, kGridSize> points() const { return points_; }
  static constexpr int size() { return kGridSize; }

  // Index of the grid point closest to `price`; ties go to the lower index.
  int NearestIndex(double price) const;

  // Affine map of [front, back] onto [-1, 1].
  double Normalize(double price) const;

 private:
  std::array<double, kGridSize> points_;
};

// Throws ModelError if p_mono < p_nash.
PriceGrid BuildPriceGrid(double p_nash, double p_mono,
                         GridUpperEndpoint upper = GridUpperEndpoint::kSymmetric);

struct LogitShares {
  double s1;
  double s2;
  double s0;
};

// Multinomial logit with outside option, u_i = (a - p_i + z_i) / mu,
// u_0 = a0 / mu. Evaluated with log-sum-exp so large shocks cannot overflow.
LogitShares ComputeLogitShares(double p1, double p2, double z1, double z2,
                               const MarketParams& params);

struct Demands {
  double q1;
  double q2;
};

// Indifferent consumer on [0, 1] with valuations shifted by the shocks,
// clamped to [0, 1]. Full coverage: q1 + q2 = 1.
Demands HotellingDemands(double p1, double p2, double z1, double z2,
                         const MarketParams& params);

// Differentiated Bertrand demand. Firm i's row uses intercept a + z_i.
// Quantities are floored at zero. Throws ModelError when d^2 == 1.
Demands LinearDemands(double p1, double p2, double z1, double z2,
                      const MarketParams& params);

struct MarketOutcome {
  std::array<double, 2> quantities{};
  std::array<double, 2> profits{};
  std::optional<double> share_outside;  // Logit only.
};

// One market period: model-specific demand, then pi_i = (p_i - c) q_i.
MarketOutcome Step(const MarketParams& params, double p1, double p2,
                   const ShockPair& z);

// Profit of `firm` (0 or 1) when it charges `own` and the rival charges `rival`.
double FirmProfit(const MarketParams& params, int firm, double own,
                  double rival, const ShockPair& z);

}  // namespace collusion

#endif  // COLLUSION_MARKET_H_
