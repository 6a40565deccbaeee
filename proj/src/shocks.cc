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

#include <string>

#include "collusion/error.h"

namespace collusion {

std::string_view RegimeLabel(RegimeName name) {
  switch (name) {
    case RegimeName::kNone:
      return "none";
    case RegimeName::kSchemeA:
      return "scheme_a";
    case RegimeName::kSchemeB:
      return "scheme_b";
    case RegimeName::kSchemeC:
      return "scheme_c";
  }
  return "unknown";
}

RegimeName ParseRegime(std::string_view label) {
  for (RegimeName r : kAllRegimes) {
    if (RegimeLabel(r) == label) return r;
  }
  throw ConfigError("unknown shock regime '" + std::string(label) +
                    "' (expected none, scheme_a, scheme_b or scheme_c)");
}

double ShockRegime::StationaryVariance() const {
  return sigma_eta * sigma_eta / (1.0 - rho * rho);
}

ShockRegime RegimeParams(RegimeName name) {
  switch (name) {
    case RegimeName::kNone:
      return {name, 0.0, 0.0};
    case RegimeName::kSchemeA:
      return {name, 0.3, 0.5};
    case RegimeName::kSchemeB:
      return {name, 0.95, 0.05};
    case RegimeName::kSchemeC:
      return {name, 0.9, 0.3};
  }
  throw ConfigError("unknown shock regime");
}

ShockState ShockState::Seeded(std::uint64_t firm0_seed,
                              std::uint64_t firm1_seed) {
  ShockState s;
  s.streams = {Rng(firm0_seed), Rng(firm1_seed)};
  return s;
}

void Ar1Step(ShockState& state, const ShockRegime& regime) {
  for (int i = 0; i < 2; ++i) {
    // Always consume a draw so the stream position is regime independent.
    const double eta = regime.sigma_eta * StandardNormal(state.streams[i]);
    state.z[i] = regime.rho * state.z[i] + eta;
  }
}

}  // namespace collusion
