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

#ifndef COLLUSION_DDQN_H_
#define COLLUSION_DDQN_H_

#include <array>
#include <cstdint>
#include <vector>

#include "collusion/agent.h"
#include "collusion/hyperparams.h"
#include "collusion/market.h"
#include "collusion/neural.h"

namespace collusion {

struct DdqnTransition {
  std::array<double, 2> state{};
  int action = 0;
  double reward = 0.0;
  std::array<double, 2> next_state{};
};

// y = r + gamma * Q_target(s', argmax_a' Q_online(s', a')), no terminal mask.
double DdqnTarget(double reward, const std::array<double, 2>& next_state,
                  const nn::Mlp& online, const nn::Mlp& target, double gamma);

// Double DQN over the 15 grid prices. The state is the normalized
// (own, rival) last-price pair; both inputs are mapped onto [-1, 1] using
// the grid span.
class DdqnAgent : public PricingAgent {
 public:
  DdqnAgent(const PriceGrid& grid, const DdqnParams& params, Rng& init_rng);

  AgentKind kind() const override { return AgentKind::kDdqn; }
  double Act(const Observation& obs, Rng& rng) override;
  // Stores the transition, takes one gradient step once the buffer holds a
  // batch, hard-copies online -> target every `target_period` steps and
  // decays epsilon once.
  void Learn(const Feedback& feedback, Rng& rng) override;

  // One gradient step on a given minibatch.
  void TrainOnBatch(const std::vector<DdqnTransition>& batch);

  std::array<double, 2> EncodeState(const Observation& obs) const;
  int GreedyAction(const std::array<double, 2>& state) const;

  double epsilon() const { return epsilon_; }
  std::int64_t grad_steps() const { return grad_steps_; }
  std::int64_t buffer_size() const { return buffer_.size(); }
  const nn::Mlp& online() const { return online_; }
  const nn::Mlp& target() const { return target_; }
  nn::Mlp& mutable_target() { return target_; }
  const DdqnParams& params() const { return params_; }

 private:
  PriceGrid grid_;
  DdqnParams params_;
  nn::Mlp online_;
  nn::Mlp target_;
  nn::Adam optimizer_;
  nn::ReplayBuffer<DdqnTransition> buffer_;
  double epsilon_;
  std::int64_t grad_steps_ = 0;
};

}  // namespace collusion

#endif  // COLLUSION_DDQN_H_
