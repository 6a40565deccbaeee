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

#ifndef COLLUSION_CONFIG_H_
#define COLLUSION_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "collusion/agent.h"
#include "collusion/hyperparams.h"
#include "collusion/market.h"
#include "collusion/shocks.h"

namespace collusion {

using Pairing = std::pair<AgentKind, AgentKind>;

// The ten unordered pairings of the four agents; the first-named agent is
// firm 0.
std::vector<Pairing> DefaultPairings();

struct ExperimentConfig {
  std::vector<MarketModel> markets = {MarketModel::kLogit,
                                      MarketModel::kHotelling,
                                      MarketModel::kLinear};
  std::vector<RegimeName> regimes = {kAllRegimes.begin(), kAllRegimes.end()};
  std::vector<Pairing> pairings = DefaultPairings();
  // Also run every heterogeneous pairing with roles swapped.
  bool swap_roles = false;
  int seeds = 20;
  std::uint64_t base_seed = 20'240'101;
  std::int64_t horizon = 10'000;
  std::int64_t window = 1'000;
  std::int64_t benchmark_samples = 100'000;
  std::uint64_t benchmark_seed = 7;
  GridUpperEndpoint grid_upper = GridUpperEndpoint::kSymmetric;
  bool correlated_shocks = false;  // reserved
  std::string output = "results";
  bool series = false;
  int series_stride = 10;
  int jobs = 0;  // 0: one per logical core
  AgentHyperparams hyper;
};

// Every configuration key with its current value, in a fixed order.
std::vector<std::pair<std::string, std::string>> ResolvedKeys(
    const ExperimentConfig& config);
std::vector<std::string> ConfigKeys();

// Sets one dotted key from text. Throws ConfigError for unknown keys and
// unparsable values.
void SetKey(ExperimentConfig& config, const std::string& key,
            const std::string& value);
// "KEY=VALUE".
void ApplyOverride(ExperimentConfig& config, const std::string& assignment);

// Built-in configurations: "paper_grid" (the full default grid) and
// "single_cell" (qlearning vs qlearning, hotelling, no shocks).
bool IsPreset(const std::string& name);
ExperimentConfig Preset(const std::string& name);

// YAML with nested sections mapping onto dotted keys. Errors name the line
// and the key.
ExperimentConfig ParseConfigYaml(const std::string& text,
                                 ExperimentConfig base = {});
// A preset name or a path to a YAML file.
ExperimentConfig LoadConfig(const std::string& name_or_path);

// Overrides from COLLUSION_<KEY> variables, KEY upper-cased with dots
// replaced by underscores.
void ApplyEnvironment(ExperimentConfig& config);

// Throws ConfigError naming the offending field.
void Validate(const ExperimentConfig& config);

// "key: value" lines, the form printed by `validate`.
std::string FormatConfig(const ExperimentConfig& config);

}  // namespace collusion

#endif  // COLLUSION_CONFIG_H_
