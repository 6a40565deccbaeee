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

#ifndef COLLUSION_PSO_H_
#define COLLUSION_PSO_H_

#include <cstdint>
#include <vector>

#include "collusion/agent.h"
#include "collusion/hyperparams.h"

namespace collusion {

struct Particle {
  double x = 0.0;
  double v = 0.0;
  double best_x = 0.0;
  double best_value = 0.0;
};

struct Swarm {
  std::vector<Particle> particles;
  double gbest_x = 0.0;
  double gbest_value = 0.0;
  int stagnation = 0;
};

// Positions uniform on [x_min, x_max], zero velocities, no evaluations yet.
Swarm InitSwarm(const PsoParams& params, Rng& rng);

double InertiaWeight(std::int64_t t, const PsoParams& params);

// One swarm iteration: evaluate every particle with `oracle`, refresh the
// personal and global bests, then move. Velocities are clipped to
// [-v_max, v_max] and positions to [x_min, x_max].
void PsoIterate(Swarm& swarm, std::int64_t t, const ProfitOracle& oracle,
                const PsoParams& params, Rng& rng);

// Reinitializes the swarm once the global best has not improved for
// `restart_after` consecutive iterations. Returns true if it restarted.
bool PsoMaybeRestart(Swarm& swarm, const PsoParams& params, Rng& rng);

// Posts the current global best; evaluations are hypothetical queries
// against this period's demand and do not consume market periods.
class PsoAgent : public PricingAgent {
 public:
  PsoAgent(const PsoParams& params, Rng& init_rng);

  AgentKind kind() const override { return AgentKind::kPso; }
  double Act(const Observation& obs, Rng& rng) override;
  void Learn(const Feedback& feedback, Rng& rng) override;

  const Swarm& swarm() const { return swarm_; }
  int restarts() const { return restarts_; }

 private:
  PsoParams params_;
  Swarm swarm_;
  int restarts_ = 0;
};

}  // namespace collusion

#endif  // COLLUSION_PSO_H_
