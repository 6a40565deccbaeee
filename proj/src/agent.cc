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

#include "collusion/agent.h"

#include <string>

#include "collusion/ddpg.h"
#include "collusion/ddqn.h"
#include "collusion/error.h"
#include "collusion/pso.h"
#include "collusion/qlearning.h"

namespace collusion {

std::string_view AgentName(AgentKind kind) {
  switch (kind) {
    case AgentKind::kQLearning:
      return "qlearning";
    case AgentKind::kPso:
      return "pso";
    case AgentKind::kDdqn:
      return "ddqn";
    case AgentKind::kDdpg:
      return "ddpg";
  }
  return "unknown";
}

AgentKind ParseAgent(std::string_view name) {
  for (AgentKind k : kAllAgents) {
    if (AgentName(k) == name) return k;
  }
  throw ConfigError("unknown agent '" + std::string(name) +
                    "' (expected qlearning, pso, ddqn or ddpg)");
}

std::unique_ptr<PricingAgent> MakeAgent(AgentKind kind,
                                        const MarketParams& /*market*/,
                                        const PriceGrid& grid,
                                        const AgentHyperparams& hyper,
                                        Rng& init_rng) {
  switch (kind) {
    case AgentKind::kQLearning:
      return std::make_unique<QLearningAgent>(grid, hyper.qlearning);
    case AgentKind::kPso:
      return std::make_unique<PsoAgent>(hyper.pso, init_rng);
    case AgentKind::kDdqn:
      return std::make_unique<DdqnAgent>(grid, hyper.ddqn, init_rng);
    case AgentKind::kDdpg:
      return std::make_unique<DdpgAgent>(hyper.ddpg, init_rng);
  }
  throw ConfigError("unknown agent kind");
}

}  // namespace collusion
