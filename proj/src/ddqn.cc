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

#include "collusion/ddqn.h"

#include <algorithm>
#include <utility>

namespace collusion {
namespace {

using nn::Matrix;

std::vector<int> LayerSizes(const DdqnParams& params) {
  std::vector<int> sizes{2};
  sizes.insert(sizes.end(), params.hidden.begin(), params.hidden.end());
  sizes.push_back(kGridSize);
  return sizes;
}

Matrix Column(const std::array<double, 2>& s) {
  Matrix m(2, 1);
  m << s[0], s[1];
  return m;
}

int ArgmaxCol(const Matrix& q, Eigen::Index col) {
  Eigen::Index best = 0;
  q.col(col).maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

double DdqnTarget(double reward, const std::array<double, 2>& next_state,
                  const nn::Mlp& online, const nn::Mlp& target, double gamma) {
  const Matrix s = Column(next_state);
  const int a = ArgmaxCol(online.Forward(s), 0);
  return reward + gamma * target.Forward(s)(a, 0);
}

DdqnAgent::DdqnAgent(const PriceGrid& grid, const DdqnParams& params,
                     Rng& init_rng)
    : grid_(grid),
      params_(params),
      online_(LayerSizes(params), nn::Activation::kRelu,
              nn::Activation::kIdentity, init_rng),
      target_(online_),
      optimizer_(AdamParams{params.lr, params.adam_beta1, params.adam_beta2,
                            params.adam_epsilon, 0.0}),
      buffer_(params.buffer),
      epsilon_(params.epsilon_start) {}

std::array<double, 2> DdqnAgent::EncodeState(const Observation& obs) const {
  return {grid_.Normalize(obs.own_last_price),
          grid_.Normalize(obs.opp_last_price)};
}

int DdqnAgent::GreedyAction(const std::array<double, 2>& state) const {
  return ArgmaxCol(online_.Forward(Column(state)), 0);
}

double DdqnAgent::Act(const Observation& obs, Rng& rng) {
  int a;
  if (Uniform01(rng) < epsilon_) {
    a = std::uniform_int_distribution<int>(0, kGridSize - 1)(rng);
  } else {
    a = GreedyAction(EncodeState(obs));
  }
  return grid_[a];
}

void DdqnAgent::TrainOnBatch(const std::vector<DdqnTransition>& batch) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  Matrix s(2, n);
  Matrix s_next(2, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& tr = batch[static_cast<std::size_t>(j)];
    s(0, j) = tr.state[0];
    s(1, j) = tr.state[1];
    s_next(0, j) = tr.next_state[0];
    s_next(1, j) = tr.next_state[1];
  }
  const Matrix q_next_online = online_.Forward(s_next);
  const Matrix q_next_target = target_.Forward(s_next);

  nn::Mlp::Cache cache;
  const Matrix q = online_.Forward(s, &cache);
  Matrix d_out = Matrix::Zero(q.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& tr = batch[static_cast<std::size_t>(j)];
    const double y =
        tr.reward + params_.gamma * q_next_target(ArgmaxCol(q_next_online, j), j);
    const double residual = q(tr.action, j) - y;
    d_out(tr.action, j) =
        nn::Huber(residual, params_.huber_threshold).second / static_cast<double>(n);
  }
  nn::GradList grads;
  online_.Backward(cache, d_out, &grads, nullptr);
  nn::ClipGlobalNorm(grads, params_.grad_clip);
  optimizer_.Step(online_.Parameters(), grads);
  ++grad_steps_;
  if (grad_steps_ % params_.target_period == 0) {
    nn::HardCopy(target_.Parameters(), std::as_const(online_).Parameters());
  }
}

void DdqnAgent::Learn(const Feedback& feedback, Rng& rng) {
  buffer_.Push({EncodeState(feedback.obs), grid_.NearestIndex(feedback.own_price),
                feedback.profit, EncodeState(feedback.next_obs)});
  if (auto batch = buffer_.Sample(params_.batch, rng)) TrainOnBatch(*batch);
  epsilon_ = std::max(params_.epsilon_min, epsilon_ * params_.epsilon_decay);
}

}  // namespace collusion
