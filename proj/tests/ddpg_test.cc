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

#include <cmath>
#include <utility>

#include <gtest/gtest.h>

namespace collusion {
namespace {

using nn::Matrix;

DdpgParams SmallParams() {
  DdpgParams p;
  p.actor_hidden = {16, 8};
  p.critic_state_hidden = 16;
  p.critic_joint_hidden = 8;
  p.batch = 8;
  p.buffer = 1000;
  return p;
}

void ZeroAll(const nn::ParamList& params) {
  for (Matrix* m : params) m->setZero();
}

std::vector<DdpgTransition> RandomBatch(Rng& rng, int n, double reward) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<DdpgTransition> batch;
  for (int i = 0; i < n; ++i) {
    batch.push_back({{u(rng), u(rng)}, u(rng), reward, {u(rng), u(rng)}});
  }
  return batch;
}

TEST(DdpgMappingTest, PriceBounds) {
  Rng init(1);
  DdpgAgent agent(DdpgParams{}, init);
  EXPECT_DOUBLE_EQ(agent.ActionToPrice(0.0), 1.0);
  EXPECT_DOUBLE_EQ(agent.ActionToPrice(1.0), 2.0);
  EXPECT_DOUBLE_EQ(agent.ActionToPrice(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(agent.PriceToAction(agent.ActionToPrice(0.37)), 0.37);
}

TEST(DdpgActTest, ZeroActorZeroNoisePostsCenter) {
  Rng init(1), rng(2);
  DdpgParams p = SmallParams();
  p.ou_sigma = 0.0;
  DdpgAgent agent(p, init);
  ZeroAll(agent.actor().Parameters());
  agent.set_noise(0.0);
  EXPECT_DOUBLE_EQ(agent.Act({1.2, 0.8, 0}, rng), 1.0);
}

TEST(DdpgActTest, NoiseIsClamped) {
  Rng init(1), rng(2);
  DdpgParams p = SmallParams();
  p.ou_sigma = 0.0;
  p.ou_theta = 0.0;  // noise stays put
  DdpgAgent agent(p, init);
  nn::ParamList a = agent.actor().Parameters();
  ZeroAll(a);
  (*a.back())(0, 0) = std::atanh(0.9);
  agent.set_noise(0.4);
  agent.set_exploration_scale(1.0);
  EXPECT_NEAR(agent.NoiselessPrice({1.0, 1.0, 0}), 1.9, 1e-12);
  EXPECT_DOUBLE_EQ(agent.Act({1.0, 1.0, 0}, rng), 2.0);
}

TEST(DdpgActTest, PricesStayInRange) {
  Rng init(3), rng(4);
  DdpgAgent agent(SmallParams(), init);
  for (int t = 0; t < 2000; ++t) {
    const double p = agent.Act({1.0, 1.0, t}, rng);
    ASSERT_GE(p, 0.0);
    ASSERT_LE(p, 2.0);
  }
}

TEST(DdpgLearnTest, ZeroNetsMoveOnlyByWeightDecay) {
  Rng init(1), rng(2);
  DdpgAgent agent(SmallParams(), init);
  ZeroAll(agent.actor().Parameters());
  ZeroAll(agent.actor_target().Parameters());
  // BatchNorm gamma must stay 1 to remain a valid layer; zero the rest.
  for (DdpgAgent* a : {&agent}) {
    for (nn::StateActionCritic* c : {&a->critic(), &a->critic_target()}) {
      ZeroAll(c->state_net().Parameters());
      ZeroAll(c->joint_net().Parameters());
    }
  }
  const auto before = std::as_const(agent.critic()).Parameters();
  std::vector<Matrix> saved;
  for (const Matrix* m : before) saved.push_back(*m);
  agent.CriticUpdate(RandomBatch(rng, 8, 0.0));
  const auto after = std::as_const(agent.critic()).Parameters();
  const double shrink = 1.0 - agent.params().critic_lr * agent.params().critic_weight_decay;
  for (std::size_t k = 0; k < after.size(); ++k) {
    EXPECT_TRUE(after[k]->isApprox(saved[k] * shrink, 1e-14) ||
                (saved[k].isZero() && after[k]->isZero()))
        << "param " << k;
  }
}

TEST(DdpgLearnTest, ActorAscendsCriticAction) {
  Rng init(1), rng(2);
  DdpgAgent agent(SmallParams(), init);
  // Q(s, a) = a: zero all critic weights except the direct action input.
  nn::StateActionCritic& critic = agent.critic();
  ZeroAll(critic.state_net().Parameters());
  nn::ParamList joint = critic.joint_net().Parameters();
  ZeroAll(joint);
  const Eigen::Index action_col = joint[0]->cols() - 1;
  (*joint[0])(0, action_col) = 1.0;
  (*joint[1])(0, 0) = 2.0;  // keeps the ReLU open for a in [-1, 1]
  (*joint[2])(0, 0) = 1.0;
  const auto batch = RandomBatch(rng, 8, 0.0);
  std::vector<double> before;
  for (const auto& tr : batch) before.push_back(agent.ActorOutput(tr.state));
  agent.ActorUpdate(batch);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_GT(agent.ActorOutput(batch[i].state), before[i]) << i;
  }
}

TEST(DdpgLearnTest, SoftTargetContraction) {
  Rng init(1);
  DdpgAgent agent(SmallParams(), init);
  ZeroAll(agent.actor_target().Parameters());
  const auto distance = [&] {
    double sq = 0.0;
    const auto a = std::as_const(agent.actor()).Parameters();
    const auto b = std::as_const(agent.actor_target()).Parameters();
    for (std::size_t k = 0; k < a.size(); ++k) sq += (*a[k] - *b[k]).squaredNorm();
    return std::sqrt(sq);
  };
  double d = distance();
  for (int i = 0; i < 20; ++i) {
    agent.UpdateTargets();
    const double next = distance();
    EXPECT_NEAR(next / d, 0.999, 1e-9);
    d = next;
  }
}

TEST(DdpgLearnTest, ExplorationDecaysPerPeriod) {
  Rng init(1), rng(2);
  DdpgAgent agent(SmallParams(), init);
  Feedback fb;
  fb.obs = {1.0, 1.0, 0};
  fb.own_price = 1.0;
  fb.next_obs = fb.obs;
  agent.Learn(fb, rng);
  EXPECT_DOUBLE_EQ(agent.exploration_scale(), 0.995);
  for (int i = 0; i < 1000; ++i) agent.Learn(fb, rng);
  EXPECT_EQ(agent.exploration_scale(), 0.01);
  EXPECT_EQ(agent.buffer_size(), agent.params().buffer);  // capacity 1000
}

}  // namespace
}  // namespace collusion
