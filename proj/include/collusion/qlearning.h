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

#ifndef COLLUSION_QLEARNING_H_
#define COLLUSION_QLEARNING_H_

#include <cstdint>
#include <vector>

#include "collusion/agent.h"
#include "collusion/hyperparams.h"
#include "collusion/market.h"

namespace collusion {

// Tabular action values. A state is the pair (own last grid index, rival
// last grid index), so there are 15 * 15 = 225 rows of 15 actions.
class QTable {
 public:
  static constexpr int kActions = kGridSize;
  static constexpr int kStates = kGridSize * kGridSize;

  QTable(double alpha, double delta);

  static int StateIndex(int own_index, int opp_index) {
    return own_index * kGridSize + opp_index;
  }

  double at(int s, int a) const;
  double& at(int s, int a);

  // Lowest-index maximizer of row s.
  int Greedy(int s) const;
  double MaxValue(int s) const;

  // Q(s,a) += alpha (r + delta max_a' Q(s',a') - Q(s,a)).
  // Throws std::out_of_range on bad indices.
  void Update(int s, int a, double reward, int s_next);

  double alpha() const { return alpha_; }
  double delta() const { return delta_; }
  const std::vector<double>& values() const { return values_; }

 private:
  void Check(int s, int a) const;

  double alpha_;
  double delta_;
  std::vector<double> values_;
};

// exp(-beta t).
double EpsilonAt(std::int64_t t, double beta);

// Uniform random action with probability epsilon, greedy otherwise.
int EpsilonGreedy(const QTable& table, int s, double epsilon, Rng& rng);

class QLearningAgent : public PricingAgent {
 public:
  QLearningAgent(const PriceGrid& grid, const QLearningParams& params);

  AgentKind kind() const override { return AgentKind::kQLearning; }
  double Act(const Observation& obs, Rng& rng) override;
  void Learn(const Feedback& feedback, Rng& rng) override;

  const QTable& table() const { return table_; }
  int StateOf(const Observation& obs) const;

 private:
  PriceGrid grid_;
  QLearningParams params_;
  QTable table_;
};

}  // namespace collusion

#endif  // COLLUSION_QLEARNING_H_
