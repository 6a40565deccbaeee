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

#include "collusion/qlearning.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace collusion {

QTable::QTable(double alpha, double delta)
    : alpha_(alpha),
      delta_(delta),
      values_(static_cast<std::size_t>(kStates) * kActions, 0.0) {}

void QTable::Check(int s, int a) const {
  if (s < 0 || s >= kStates || a < 0 || a >= kActions) {
    throw std::out_of_range("q-table index (" + std::to_string(s) + ", " +
                            std::to_string(a) + ") out of range");
  }
}

double QTable::at(int s, int a) const {
  Check(s, a);
  return values_[static_cast<std::size_t>(s) * kActions + a];
}

double& QTable::at(int s, int a) {
  Check(s, a);
  return values_[static_cast<std::size_t>(s) * kActions + a];
}

int QTable::Greedy(int s) const {
  Check(s, 0);
  const double* row = &values_[static_cast<std::size_t>(s) * kActions];
  int best = 0;
  for (int a = 1; a < kActions; ++a) {
    if (row[a] > row[best]) best = a;
  }
  return best;
}

double QTable::MaxValue(int s) const {
  return values_[static_cast<std::size_t>(s) * kActions + Greedy(s)];
}

void QTable::Update(int s, int a, double reward, int s_next) {
  Check(s, a);
  Check(s_next, 0);
  double& q = values_[static_cast<std::size_t>(s) * kActions + a];
  q += alpha_ * (reward + delta_ * MaxValue(s_next) - q);
}

double EpsilonAt(std::int64_t t, double beta) {
  return std::exp(-beta * static_cast<double>(t));
}

int EpsilonGreedy(const QTable& table, int s, double epsilon, Rng& rng) {
  if (Uniform01(rng) < epsilon) {
    return std::uniform_int_distribution<int>(0, QTable::kActions - 1)(rng);
  }
  return table.Greedy(s);
}

QLearningAgent::QLearningAgent(const PriceGrid& grid,
                               const QLearningParams& params)
    : grid_(grid), params_(params), table_(params.alpha, params.delta) {}

int QLearningAgent::StateOf(const Observation& obs) const {
  return QTable::StateIndex(grid_.NearestIndex(obs.own_last_price),
                            grid_.NearestIndex(obs.opp_last_price));
}

double QLearningAgent::Act(const Observation& obs, Rng& rng) {
  const int a =
      EpsilonGreedy(table_, StateOf(obs), EpsilonAt(obs.t, params_.beta), rng);
  return grid_[a];
}

void QLearningAgent::Learn(const Feedback& feedback, Rng& /*rng*/) {
  table_.Update(StateOf(feedback.obs), grid_.NearestIndex(feedback.own_price),
                feedback.profit, StateOf(feedback.next_obs));
}

}  // namespace collusion
