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

#ifndef COLLUSION_HYPERPARAMS_H_
#define COLLUSION_HYPERPARAMS_H_

#include <cstdint>
#include <vector>

namespace collusion {

struct QLearningParams {
  double alpha = 0.15;   // learning rate
  double delta = 0.95;   // discount
  double beta = 1.5e-4;  // exploration decay, eps_t = exp(-beta t)
};

struct PsoParams {
  int particles = 10;
  double c1 = 1.75;
  double c2 = 1.75;
  // Inertia w_t = max(w_end, w_start - (w_start - w_end) t / w_horizon).
  double w_start = 0.9;
  double w_end = 0.4;
  double w_horizon = 10'000.0;
  double v_max = 0.3;
  double x_min = 0.0;
  double x_max = 2.0;
  int restart_after = 300;
  // Keep the incumbent global best as one particle of a restarted swarm.
  bool keep_incumbent = true;
  // Hypothetical evaluations see the current shock draw. Off: deterministic
  // demand (z = 0) against the rival's posted price.
  bool oracle_shocks = false;
};

struct AdamParams {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Decoupled shrinkage: p -= lr * weight_decay * p after each step.
  double weight_decay = 0.0;
};

struct DdqnParams {
  std::vector<int> hidden = {128, 128, 64};
  double gamma = 0.99;
  double lr = 1e-4;
  int batch = 128;
  std::int64_t buffer = 50'000;
  int target_period = 500;  // gradient steps between hard target copies
  double epsilon_start = 1.0;
  double epsilon_min = 0.01;
  double epsilon_decay = 0.995;
  double grad_clip = 1.0;
  double huber_threshold = 1.0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

struct DdpgParams {
  std::vector<int> actor_hidden = {400, 300};
  int critic_state_hidden = 400;
  int critic_joint_hidden = 300;
  double gamma = 0.99;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  double critic_weight_decay = 1e-2;
  int batch = 64;
  std::int64_t buffer = 1'000'000;
  double tau = 0.001;
  double ou_theta = 0.15;
  double ou_mu = 0.0;
  double ou_sigma = 0.2;
  double exploration_start = 1.0;
  double exploration_min = 0.01;
  double exploration_decay = 0.995;
  double bn_momentum = 0.99;
  double price_min = 0.0;
  double price_max = 2.0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

struct AgentHyperparams {
  QLearningParams qlearning;
  PsoParams pso;
  DdqnParams ddqn;
  DdpgParams ddpg;
};

}  // namespace collusion

#endif  // COLLUSION_HYPERPARAMS_H_
