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

#include "collusion/pso.h"

#include <algorithm>
#include <limits>

namespace collusion {
namespace {

constexpr double kUnevaluated = -std::numeric_limits<double>::infinity();

}  // namespace

Swarm InitSwarm(const PsoParams& params, Rng& rng) {
  std::uniform_real_distribution<double> pos(params.x_min, params.x_max);
  Swarm swarm;
  swarm.particles.resize(static_cast<std::size_t>(params.particles));
  for (Particle& p : swarm.particles) {
    p.x = pos(rng);
    p.v = 0.0;
    p.best_x = p.x;
    p.best_value = kUnevaluated;
  }
  swarm.gbest_x = swarm.particles.front().x;
  swarm.gbest_value = kUnevaluated;
  return swarm;
}

double InertiaWeight(std::int64_t t, const PsoParams& params) {
  const double w = params.w_start - (params.w_start - params.w_end) *
                                        static_cast<double>(t) /
                                        params.w_horizon;
  return std::max(params.w_end, w);
}

void PsoIterate(Swarm& swarm, std::int64_t t, const ProfitOracle& oracle,
                const PsoParams& params, Rng& rng) {
  bool improved = false;
  for (Particle& p : swarm.particles) {
    const double value = oracle(p.x);
    if (value > p.best_value) {
      p.best_value = value;
      p.best_x = p.x;
    }
    if (value > swarm.gbest_value) {
      swarm.gbest_value = value;
      swarm.gbest_x = p.x;
      improved = true;
    }
  }
  swarm.stagnation = improved ? 0 : swarm.stagnation + 1;

  const double w = InertiaWeight(t, params);
  for (Particle& p : swarm.particles) {
    const double r1 = Uniform01(rng);
    const double r2 = Uniform01(rng);
    const double v = w * p.v + params.c1 * r1 * (p.best_x - p.x) +
                     params.c2 * r2 * (swarm.gbest_x - p.x);
    p.v = std::clamp(v, -params.v_max, params.v_max);
    p.x = std::clamp(p.x + p.v, params.x_min, params.x_max);
  }
}

bool PsoMaybeRestart(Swarm& swarm, const PsoParams& params, Rng& rng) {
  if (swarm.stagnation < params.restart_after) return false;
  const double incumbent = swarm.gbest_x;
  swarm = InitSwarm(params, rng);
  if (params.keep_incumbent) {
    Particle& seed = swarm.particles.front();
    seed.x = incumbent;
    seed.best_x = incumbent;
  }
  swarm.gbest_x = incumbent;
  return true;
}

PsoAgent::PsoAgent(const PsoParams& params, Rng& init_rng)
    : params_(params), swarm_(InitSwarm(params, init_rng)) {}

double PsoAgent::Act(const Observation& /*obs*/, Rng& /*rng*/) {
  return swarm_.gbest_x;
}

void PsoAgent::Learn(const Feedback& feedback, Rng& rng) {
  PsoIterate(swarm_, feedback.obs.t, feedback.profit_oracle, params_, rng);
  if (PsoMaybeRestart(swarm_, params_, rng)) ++restarts_;
}

}  // namespace collusion
