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

#ifndef COLLUSION_SHOCKS_H_
#define COLLUSION_SHOCKS_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "collusion/market.h"
#include "collusion/rng.h"

namespace collusion {

enum class RegimeName { kNone, kSchemeA, kSchemeB, kSchemeC };

inline constexpr std::array<RegimeName, 4> kAllRegimes = {
    RegimeName::kNone, RegimeName::kSchemeA, RegimeName::kSchemeB,
    RegimeName::kSchemeC};

// "none", "scheme_a", "scheme_b", "scheme_c".
std::string_view RegimeLabel(RegimeName name);
RegimeName ParseRegime(std::string_view label);  // throws ConfigError

// AR(1) parameters z_t = rho z_{t-1} + eta_t, eta_t ~ N(0, sigma_eta^2).
struct ShockRegime {
  RegimeName name = RegimeName::kNone;
  double rho = 0.0;
  double sigma_eta = 0.0;

  // sigma_eta^2 / (1 - rho^2).
  double StationaryVariance() const;
};

ShockRegime RegimeParams(RegimeName name);

// Per-firm latent shocks with one independent innovation stream per firm.
struct ShockState {
  ShockPair z{0.0, 0.0};
  std::array<Rng, 2> streams;

  // Both firms start at the stationary mean z = 0.
  static ShockState Seeded(std::uint64_t firm0_seed, std::uint64_t firm1_seed);
};

// Advances both firms' shocks by one period in place.
void Ar1Step(ShockState& state, const ShockRegime& regime);

}  // namespace collusion

#endif  // COLLUSION_SHOCKS_H_
