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

#ifndef COLLUSION_AGENT_H_
#define COLLUSION_AGENT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>

#include "collusion/hyperparams.h"
#include "collusion/market.h"
#include "collusion/rng.h"

namespace collusion {

enum class AgentKind { kQLearning, kPso, kDdqn, kDdpg };

inline constexpr std::array<AgentKind, 4> kAllAgents = {
    AgentKind::kQLearning, AgentKind::kDdqn, AgentKind::kPso, AgentKind::kDdpg};

// "qlearning", "pso", "ddqn", "ddpg".
std::string_view AgentName(AgentKind kind);
AgentKind ParseAgent(std::string_view name);  // throws ConfigError

// What a firm sees before posting a price. Shocks are never observed.
struct Observation {
  double own_last_price = 0.0;
  double opp_last_price = 0.0;
  std::int64_t t = 0;
};

// Own profit at a hypothetical own price, against the rival's posted price
// under this period's demand.
using ProfitOracle = std::function<double(double own_price)>;

struct Feedback {
  Observation obs;
  double own_price = 0.0;
  double opp_price = 0.0;
  double profit = 0.0;
  Observation next_obs;
  ProfitOracle profit_oracle;
};

class PricingAgent {
 public:
  virtual ~PricingAgent() = default;

  virtual AgentKind kind() const = 0;
  // Price posted this period.
  virtual double Act(const Observation& obs, Rng& rng) = 0;
  // Called once per period after the market clears.
  virtual void Learn(const Feedback& feedback, Rng& rng) = 0;
};

std::unique_ptr<PricingAgent> MakeAgent(AgentKind kind,
                                        const MarketParams& market,
                                        const PriceGrid& grid,
                                        const AgentHyperparams& hyper,
                                        Rng& init_rng);

}  // namespace collusion

#endif  // COLLUSION_AGENT_H_
