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

#include "collusion/ddpg.h"

#include <algorithm>
#include <utility>

namespace collusion {
namespace {

using nn::Matrix;

std::vector<int> ActorSizes(const DdpgParams& params) {
  std::vector<int> sizes{2};
  sizes.insert(sizes.end(), params.actor_hidden.begin(),
               params.actor_hidden.end());
  sizes.push_back(1);
  return sizes;
}

struct BatchMatrices {
  Matrix state;
  Matrix action;
  Matrix reward;
  Matrix next_state;
};

BatchMatrices Stack(const std::vector<DdpgTransition>& batch) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  BatchMatrices m{Matrix(2, n), Matrix(1, n), Matrix(1, n), Matrix(2, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& tr = batch[static_cast<std::size_t>(j)];
    m.state(0, j) = tr.state[0];
    m.state(1, j) = tr.state[1];
    m.action(0, j) = tr.action;
    m.reward(0, j) = tr.reward;
    m.next_state(0, j) = tr.next_state[0];
    m.next_state(1, j) = tr.next_state[1];
  }
  return m;
}

}  // namespace

DdpgAgent::DdpgAgent(const DdpgParams& params, Rng& init_rng)
    : params_(params),
      actor_(ActorSizes(params), nn::Activation::kRelu, nn::Activation::kTanh,
             init_rng),
      actor_target_(actor_),
      critic_(2, 1, params.critic_state_hidden, {params.critic_joint_hidden},
              params.bn_momentum, init_rng),
      critic_target_(critic_),
      actor_opt_(AdamParams{params.actor_lr, params.adam_beta1,
                            params.adam_beta2, params.adam_epsilon, 0.0}),
      critic_opt_(AdamParams{params.critic_lr, params.adam_beta1,
                             params.adam_beta2, params.adam_epsilon,
                             params.critic_weight_decay}),
      buffer_(params.buffer),
      noise_(params.ou_mu),
      exploration_scale_(params.exploration_start) {}

std::array<double, 2> DdpgAgent::EncodeState(const Observation& obs) const {
  return {PriceToAction(obs.own_last_price), PriceToAction(obs.opp_last_price)};
}

double DdpgAgent::ActionToPrice(double action) const {
  const double mid = 0.5 * (params_.price_max + params_.price_min);
  const double half = 0.5 * (params_.price_max - params_.price_min);
  return mid + half * action;
}

double DdpgAgent::PriceToAction(double price) const {
  const double mid = 0.5 * (params_.price_max + params_.price_min);
  const double half = 0.5 * (params_.price_max - params_.price_min);
  return (price - mid) / half;
}

double DdpgAgent::ActorOutput(const std::array<double, 2>& state) const {
  Matrix s(2, 1);
  s << state[0], state[1];
  return actor_.Forward(s)(0, 0);
}

double DdpgAgent::NoiselessPrice(const Observation& obs) const {
  return ActionToPrice(ActorOutput(EncodeState(obs)));
}

double DdpgAgent::Act(const Observation& obs, Rng& rng) {
  noise_ = nn::OuStep(noise_, params_.ou_theta, params_.ou_mu, params_.ou_sigma, rng);
  const double a = std::clamp(
      ActorOutput(EncodeState(obs)) + exploration_scale_ * noise_, -1.0, 1.0);
  return ActionToPrice(a);
}

void DdpgAgent::CriticUpdate(const std::vector<DdpgTransition>& batch) {
  const BatchMatrices m = Stack(batch);
  const double n = static_cast<double>(batch.size());
  const Matrix next_action = actor_target_.Forward(m.next_state);
  const Matrix q_next =
      critic_target_.Forward(m.next_state, next_action, nn::Mode::kTrain);
  const Matrix y = m.reward + params_.gamma * q_next;

  nn::StateActionCritic::Cache cache;
  const Matrix q = critic_.Forward(m.state, m.action, nn::Mode::kTrain, &cache);
  const Matrix d_q = (2.0 / n) * (q - y);
  nn::GradList grads;
  critic_.Backward(cache, d_q, &grads, nullptr, nullptr);
  critic_opt_.Step(critic_.Parameters(), grads);
}

void DdpgAgent::ActorUpdate(const std::vector<DdpgTransition>& batch) {
  const BatchMatrices m = Stack(batch);
  const double n = static_cast<double>(batch.size());
  nn::Mlp::Cache actor_cache;
  const Matrix action = actor_.Forward(m.state, &actor_cache);
  nn::StateActionCritic::Cache critic_cache;
  critic_.Forward(m.state, action, nn::Mode::kTrain, &critic_cache);
  // Ascend mean Q: minimize -Q / n.
  const Matrix d_q = Matrix::Constant(1, m.state.cols(), -1.0 / n);
  Matrix d_action;
  critic_.Backward(critic_cache, d_q, nullptr, nullptr, &d_action);
  nn::GradList grads;
  actor_.Backward(actor_cache, d_action, &grads, nullptr);
  actor_opt_.Step(actor_.Parameters(), grads);
}

void DdpgAgent::UpdateTargets() {
  nn::SoftUpdate(actor_target_.Parameters(), std::as_const(actor_).Parameters(),
                 params_.tau);
  nn::SoftUpdate(critic_target_.Parameters(),
                 std::as_const(critic_).Parameters(), params_.tau);
}

void DdpgAgent::Learn(const Feedback& feedback, Rng& rng) {
  buffer_.Push({EncodeState(feedback.obs), PriceToAction(feedback.own_price),
                feedback.profit, EncodeState(feedback.next_obs)});
  if (auto batch = buffer_.Sample(params_.batch, rng)) {
    CriticUpdate(*batch);
    ActorUpdate(*batch);
    UpdateTargets();
  }
  exploration_scale_ = std::max(params_.exploration_min,
                                exploration_scale_ * params_.exploration_decay);
}

}  // namespace collusion
