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

#ifndef COLLUSION_DDPG_H_
#define COLLUSION_DDPG_H_

#include <array>
#include <cstdint>
#include <vector>

#include "collusion/agent.h"
#include "collusion/hyperparams.h"
#include "collusion/neural.h"

namespace collusion {

struct DdpgTransition {
  std::array<double, 2> state{};
  double action = 0.0;  // normalized, in [-1, 1]
  double reward = 0.0;
  std::array<double, 2> next_state{};
};

// Deterministic actor-critic on a continuous price. The actor's tanh output
// a in [-1, 1] maps linearly onto [price_min, price_max]; with the default
// [0, 2] span the posted price is 1 + a.
class DdpgAgent : public PricingAgent {
 public:
  DdpgAgent(const DdpgParams& params, Rng& init_rng);

  AgentKind kind() const override { return AgentKind::kDdpg; }
  double Act(const Observation& obs, Rng& rng) override;
  void Learn(const Feedback& feedback, Rng& rng) override;

  // The three pieces of one learn step, exposed for testing.
  void CriticUpdate(const std::vector<DdpgTransition>& batch);
  void ActorUpdate(const std::vector<DdpgTransition>& batch);
  void UpdateTargets();

  std::array<double, 2> EncodeState(const Observation& obs) const;
  double ActionToPrice(double action) const;
  double PriceToAction(double price) const;
  // Price the actor would post without exploration noise.
  double NoiselessPrice(const Observation& obs) const;
  double ActorOutput(const std::array<double, 2>& state) const;

  double exploration_scale() const { return exploration_scale_; }
  double noise() const { return noise_; }
  void set_noise(double xi) { noise_ = xi; }
  void set_exploration_scale(double s) { exploration_scale_ = s; }

  nn::Mlp& actor() { return actor_; }
  nn::Mlp& actor_target() { return actor_target_; }
  nn::StateActionCritic& critic() { return critic_; }
  nn::StateActionCritic& critic_target() { return critic_target_; }
  std::int64_t buffer_size() const { return buffer_.size(); }
  const DdpgParams& params() const { return params_; }

 private:
  DdpgParams params_;
  nn::Mlp actor_;
  nn::Mlp actor_target_;
  nn::StateActionCritic critic_;
  nn::StateActionCritic critic_target_;
  nn::Adam actor_opt_;
  nn::Adam critic_opt_;
  nn::ReplayBuffer<DdpgTransition> buffer_;
  double noise_;
  double exploration_scale_;
};

}  // namespace collusion

#endif  // COLLUSION_DDPG_H_
