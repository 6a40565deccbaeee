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

#include "collusion/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <system_error>

#include <yaml-cpp/yaml.h>

#include "collusion/error.h"

namespace collusion {
namespace {

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct KeySpec {
  std::string name;
  Setter set;
  Getter get;
};

std::string Trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream in(s);
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string& text) {
  const std::string s = Trim(text);
  T value{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("cannot parse '" + text + "' as a number");
  }
  return value;
}

double ParseDouble(const std::string& text) {
  const std::string s = Trim(text);
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("cannot parse '" + text + "' as a real number");
  }
  return value;
}

bool ParseBool(const std::string& text) {
  std::string s = Trim(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("cannot parse '" + text + "' as a boolean");
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

template <typename T>
std::string Join(const std::vector<T>& xs,
                 const std::function<std::string(const T&)>& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += f(xs[i]);
  }
  return out;
}

template <typename F>
KeySpec RealKey(std::string name, F field) {
  return {std::move(name),
          [field](ExperimentConfig& c, const std::string& v) {
            field(c) = ParseDouble(v);
          },
          [field](const ExperimentConfig& c) {
            return FormatDouble(field(const_cast<ExperimentConfig&>(c)));
          }};
}

template <typename T, typename F>
KeySpec IntKey(std::string name, F field) {
  return {std::move(name),
          [field](ExperimentConfig& c, const std::string& v) {
            field(c) = ParseNumber<T>(v);
          },
          [field](const ExperimentConfig& c) {
            return std::to_string(field(const_cast<ExperimentConfig&>(c)));
          }};
}

template <typename F>
KeySpec BoolKey(std::string name, F field) {
  return {std::move(name),
          [field](ExperimentConfig& c, const std::string& v) {
            field(c) = ParseBool(v);
          },
          [field](const ExperimentConfig& c) {
            return std::string(field(const_cast<ExperimentConfig&>(c))
                                   ? "true"
                                   : "false");
          }};
}

template <typename F>
KeySpec IntListKey(std::string name, F field) {
  return {std::move(name),
          [field](ExperimentConfig& c, const std::string& v) {
            std::vector<int> out;
            for (const auto& item : SplitList(v)) out.push_back(ParseNumber<int>(item));
            field(c) = out;
          },
          [field](const ExperimentConfig& c) {
            return Join<int>(field(const_cast<ExperimentConfig&>(c)),
                             [](const int& x) { return std::to_string(x); });
          }};
}

Pairing ParsePairing(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("pairing '" + text + "' must look like agent:agent");
  }
  return {ParseAgent(Trim(text.substr(0, colon))),
          ParseAgent(Trim(text.substr(colon + 1)))};
}

std::string PairingLabel(const Pairing& p) {
  return std::string(AgentName(p.first)) + ":" + std::string(AgentName(p.second));
}

const std::vector<KeySpec>& Registry() {
  static const std::vector<KeySpec> keys = [] {
    std::vector<KeySpec> k;
    k.push_back({"markets",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.markets.clear();
                   for (const auto& s : SplitList(v)) c.markets.push_back(ParseMarket(s));
                 },
                 [](const ExperimentConfig& c) {
                   return Join<MarketModel>(c.markets, [](const MarketModel& m) {
                     return std::string(MarketName(m));
                   });
                 }});
    k.push_back({"regimes",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.regimes.clear();
                   for (const auto& s : SplitList(v)) c.regimes.push_back(ParseRegime(s));
                 },
                 [](const ExperimentConfig& c) {
                   return Join<RegimeName>(c.regimes, [](const RegimeName& r) {
                     return std::string(RegimeLabel(r));
                   });
                 }});
    k.push_back({"pairings",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.pairings.clear();
                   for (const auto& s : SplitList(v)) c.pairings.push_back(ParsePairing(s));
                 },
                 [](const ExperimentConfig& c) {
                   return Join<Pairing>(c.pairings, PairingLabel);
                 }});
    k.push_back(BoolKey("swap_roles", [](ExperimentConfig& c) -> bool& { return c.swap_roles; }));
    k.push_back(IntKey<int>("seeds", [](ExperimentConfig& c) -> int& { return c.seeds; }));
    k.push_back(IntKey<std::uint64_t>("base_seed", [](ExperimentConfig& c) -> std::uint64_t& { return c.base_seed; }));
    k.push_back(IntKey<std::int64_t>("horizon", [](ExperimentConfig& c) -> std::int64_t& { return c.horizon; }));
    k.push_back(IntKey<std::int64_t>("window", [](ExperimentConfig& c) -> std::int64_t& { return c.window; }));
    k.push_back(IntKey<std::int64_t>("benchmark.mc_samples", [](ExperimentConfig& c) -> std::int64_t& { return c.benchmark_samples; }));
    k.push_back(IntKey<std::uint64_t>("benchmark.seed", [](ExperimentConfig& c) -> std::uint64_t& { return c.benchmark_seed; }));
    k.push_back({"grid.upper_endpoint",
                 [](ExperimentConfig& c, const std::string& v) {
                   const std::string s = Trim(v);
                   if (s == "symmetric") {
                     c.grid_upper = GridUpperEndpoint::kSymmetric;
                   } else if (s == "literal") {
                     c.grid_upper = GridUpperEndpoint::kLiteral;
                   } else {
                     throw ConfigError("expected 'symmetric' or 'literal', got '" + s + "'");
                   }
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(c.grid_upper == GridUpperEndpoint::kSymmetric
                                          ? "symmetric"
                                          : "literal");
                 }});
    k.push_back(BoolKey("shocks.correlated", [](ExperimentConfig& c) -> bool& { return c.correlated_shocks; }));
    k.push_back({"output",
                 [](ExperimentConfig& c, const std::string& v) { c.output = Trim(v); },
                 [](const ExperimentConfig& c) { return c.output; }});
    k.push_back(BoolKey("series", [](ExperimentConfig& c) -> bool& { return c.series; }));
    k.push_back(IntKey<int>("series_stride", [](ExperimentConfig& c) -> int& { return c.series_stride; }));
    k.push_back(IntKey<int>("jobs", [](ExperimentConfig& c) -> int& { return c.jobs; }));

#define COLLUSION_REAL(key, path) \
  k.push_back(RealKey(key, [](ExperimentConfig& c) -> double& { return c.hyper.path; }))
#define COLLUSION_INT(type, key, path) \
  k.push_back(IntKey<type>(key, [](ExperimentConfig& c) -> type& { return c.hyper.path; }))

    COLLUSION_REAL("qlearning.alpha", qlearning.alpha);
    COLLUSION_REAL("qlearning.delta", qlearning.delta);
    COLLUSION_REAL("qlearning.beta", qlearning.beta);

    COLLUSION_INT(int, "pso.particles", pso.particles);
    COLLUSION_REAL("pso.c1", pso.c1);
    COLLUSION_REAL("pso.c2", pso.c2);
    COLLUSION_REAL("pso.w_start", pso.w_start);
    COLLUSION_REAL("pso.w_end", pso.w_end);
    COLLUSION_REAL("pso.w_horizon", pso.w_horizon);
    COLLUSION_REAL("pso.v_max", pso.v_max);
    COLLUSION_REAL("pso.x_min", pso.x_min);
    COLLUSION_REAL("pso.x_max", pso.x_max);
    COLLUSION_INT(int, "pso.restart_after", pso.restart_after);
    k.push_back(BoolKey("pso.keep_incumbent", [](ExperimentConfig& c) -> bool& { return c.hyper.pso.keep_incumbent; }));
    k.push_back(BoolKey("pso.oracle_shocks", [](ExperimentConfig& c) -> bool& { return c.hyper.pso.oracle_shocks; }));

    k.push_back(IntListKey("ddqn.hidden", [](ExperimentConfig& c) -> std::vector<int>& { return c.hyper.ddqn.hidden; }));
    COLLUSION_REAL("ddqn.gamma", ddqn.gamma);
    COLLUSION_REAL("ddqn.lr", ddqn.lr);
    COLLUSION_INT(int, "ddqn.batch", ddqn.batch);
    COLLUSION_INT(std::int64_t, "ddqn.buffer", ddqn.buffer);
    COLLUSION_INT(int, "ddqn.target_period", ddqn.target_period);
    COLLUSION_REAL("ddqn.epsilon_start", ddqn.epsilon_start);
    COLLUSION_REAL("ddqn.epsilon_min", ddqn.epsilon_min);
    COLLUSION_REAL("ddqn.epsilon_decay", ddqn.epsilon_decay);
    COLLUSION_REAL("ddqn.grad_clip", ddqn.grad_clip);
    COLLUSION_REAL("ddqn.huber_threshold", ddqn.huber_threshold);
    COLLUSION_REAL("ddqn.adam_beta1", ddqn.adam_beta1);
    COLLUSION_REAL("ddqn.adam_beta2", ddqn.adam_beta2);
    COLLUSION_REAL("ddqn.adam_epsilon", ddqn.adam_epsilon);

    k.push_back(IntListKey("ddpg.actor_hidden", [](ExperimentConfig& c) -> std::vector<int>& { return c.hyper.ddpg.actor_hidden; }));
    COLLUSION_INT(int, "ddpg.critic_state_hidden", ddpg.critic_state_hidden);
    COLLUSION_INT(int, "ddpg.critic_joint_hidden", ddpg.critic_joint_hidden);
    COLLUSION_REAL("ddpg.gamma", ddpg.gamma);
    COLLUSION_REAL("ddpg.actor_lr", ddpg.actor_lr);
    COLLUSION_REAL("ddpg.critic_lr", ddpg.critic_lr);
    COLLUSION_REAL("ddpg.critic_weight_decay", ddpg.critic_weight_decay);
    COLLUSION_INT(int, "ddpg.batch", ddpg.batch);
    COLLUSION_INT(std::int64_t, "ddpg.buffer", ddpg.buffer);
    COLLUSION_REAL("ddpg.tau", ddpg.tau);
    COLLUSION_REAL("ddpg.ou_theta", ddpg.ou_theta);
    COLLUSION_REAL("ddpg.ou_mu", ddpg.ou_mu);
    COLLUSION_REAL("ddpg.ou_sigma", ddpg.ou_sigma);
    COLLUSION_REAL("ddpg.exploration_start", ddpg.exploration_start);
    COLLUSION_REAL("ddpg.exploration_min", ddpg.exploration_min);
    COLLUSION_REAL("ddpg.exploration_decay", ddpg.exploration_decay);
    COLLUSION_REAL("ddpg.bn_momentum", ddpg.bn_momentum);
    COLLUSION_REAL("ddpg.price_min", ddpg.price_min);
    COLLUSION_REAL("ddpg.price_max", ddpg.price_max);
    COLLUSION_REAL("ddpg.adam_beta1", ddpg.adam_beta1);
    COLLUSION_REAL("ddpg.adam_beta2", ddpg.adam_beta2);
    COLLUSION_REAL("ddpg.adam_epsilon", ddpg.adam_epsilon);
#undef COLLUSION_REAL
#undef COLLUSION_INT
    return k;
  }();
  return keys;
}

const KeySpec& Find(const std::string& key) {
  for (const auto& spec : Registry()) {
    if (spec.name == key) return spec;
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

std::string ScalarText(const YAML::Node& node, const std::string& key) {
  if (node.IsScalar()) return node.Scalar();
  if (node.IsSequence()) {
    std::string out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const YAML::Node item = node[i];
      std::string text;
      if (item.IsScalar()) {
        text = item.Scalar();
      } else if (item.IsSequence() && item.size() == 2 && item[0].IsScalar() &&
                 item[1].IsScalar()) {
        text = item[0].Scalar() + ":" + item[1].Scalar();
      } else {
        throw ConfigError("line " + std::to_string(item.Mark().line + 1) +
                          ": key '" + key + "': unsupported list item");
      }
      if (i) out += ",";
      out += text;
    }
    return out;
  }
  if (node.IsNull()) return "";
  throw ConfigError("line " + std::to_string(node.Mark().line + 1) + ": key '" +
                    key + "': expected a value or a list");
}

void ApplyYaml(ExperimentConfig& config, const YAML::Node& node,
               const std::string& prefix) {
  for (const auto& entry : node) {
    const std::string name = entry.first.as<std::string>();
    const std::string key = prefix.empty() ? name : prefix + "." + name;
    const YAML::Node value = entry.second;
    if (value.IsMap()) {
      ApplyYaml(config, value, key);
      continue;
    }
    try {
      SetKey(config, key, ScalarText(value, key));
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      throw ConfigError("line " + std::to_string(entry.first.Mark().line + 1) +
                        ": " + what);
    }
  }
}

}  // namespace

std::vector<Pairing> DefaultPairings() {
  std::vector<Pairing> out;
  for (std::size_t i = 0; i < kAllAgents.size(); ++i) {
    out.push_back({kAllAgents[i], kAllAgents[i]});
  }
  for (std::size_t i = 0; i < kAllAgents.size(); ++i) {
    for (std::size_t j = i + 1; j < kAllAgents.size(); ++j) {
      out.push_back({kAllAgents[i], kAllAgents[j]});
    }
  }
  return out;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> out;
  for (const auto& spec : Registry()) out.push_back(spec.name);
  return out;
}

std::vector<std::pair<std::string, std::string>> ResolvedKeys(
    const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : Registry()) out.emplace_back(spec.name, spec.get(config));
  return out;
}

void SetKey(ExperimentConfig& config, const std::string& key,
            const std::string& value) {
  const KeySpec& spec = Find(key);
  try {
    spec.set(config, value);
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

void ApplyOverride(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' must look like KEY=VALUE");
  }
  SetKey(config, Trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

bool IsPreset(const std::string& name) {
  return name == "paper_grid" || name == "single_cell";
}

ExperimentConfig Preset(const std::string& name) {
  ExperimentConfig config;
  if (name == "paper_grid") return config;
  if (name == "single_cell") {
    config.markets = {MarketModel::kHotelling};
    config.regimes = {RegimeName::kNone};
    config.pairings = {{AgentKind::kQLearning, AgentKind::kQLearning}};
    return config;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig ParseConfigYaml(const std::string& text, ExperimentConfig base) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (root.IsNull()) return base;
  if (!root.IsMap()) throw ConfigError("line 1: top level must be a mapping");
  if (const YAML::Node preset = root["preset"]) {
    const std::string name = preset.as<std::string>();
    if (!IsPreset(name)) {
      throw ConfigError("line " + std::to_string(preset.Mark().line + 1) +
                        ": unknown preset '" + name + "'");
    }
    base = Preset(name);
    root.remove("preset");
  }
  ApplyYaml(base, root, "");
  return base;
}

ExperimentConfig LoadConfig(const std::string& name_or_path) {
  if (IsPreset(name_or_path)) return Preset(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) {
    throw ConfigError("cannot open config '" + name_or_path +
                      "' (not a file and not a preset: paper_grid, single_cell)");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseConfigYaml(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(name_or_path + ":" + e.what());
  }
}

void ApplyEnvironment(ExperimentConfig& config) {
  for (const auto& spec : Registry()) {
    std::string var = "COLLUSION_";
    for (char c : spec.name) {
      var += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (const char* value = std::getenv(var.c_str())) {
      try {
        spec.set(config, value);
      } catch (const ConfigError& e) {
        throw ConfigError("environment " + var + ": " + e.what());
      }
    }
  }
}

void Validate(const ExperimentConfig& config) {
  auto fail = [](const std::string& key, const std::string& msg) {
    throw ConfigError("key '" + key + "': " + msg);
  };
  if (config.markets.empty()) fail("markets", "at least one market is required");
  if (config.regimes.empty()) fail("regimes", "at least one regime is required");
  if (config.pairings.empty()) fail("pairings", "at least one pairing is required");
  if (config.seeds < 1) fail("seeds", "must be at least 1");
  if (config.window < 1) fail("window", "must be at least 1");
  if (config.horizon < config.window) fail("horizon", "must be at least window");
  if (config.benchmark_samples < 10'000) {
    fail("benchmark.mc_samples", "must be at least 10000");
  }
  if (config.correlated_shocks) {
    fail("shocks.correlated", "correlated shocks are reserved and not supported");
  }
  if (config.series_stride < 1) fail("series_stride", "must be at least 1");
  if (config.jobs < 0) fail("jobs", "must be non-negative");
  if (config.output.empty()) fail("output", "must not be empty");

  const auto& q = config.hyper.qlearning;
  if (!(q.alpha > 0.0 && q.alpha <= 1.0)) fail("qlearning.alpha", "must be in (0, 1]");
  if (!(q.delta >= 0.0 && q.delta < 1.0)) fail("qlearning.delta", "must be in [0, 1)");
  if (q.beta < 0.0) fail("qlearning.beta", "must be non-negative");

  const auto& p = config.hyper.pso;
  if (p.particles < 1) fail("pso.particles", "must be at least 1");
  if (!(p.x_max > p.x_min)) fail("pso.x_max", "must exceed pso.x_min");
  if (!(p.v_max > 0.0)) fail("pso.v_max", "must be positive");
  if (!(p.w_horizon > 0.0)) fail("pso.w_horizon", "must be positive");
  if (p.restart_after < 1) fail("pso.restart_after", "must be at least 1");

  const auto& d = config.hyper.ddqn;
  if (d.hidden.empty()) fail("ddqn.hidden", "needs at least one layer");
  for (int h : d.hidden) if (h < 1) fail("ddqn.hidden", "layer sizes must be positive");
  if (!(d.lr > 0.0)) fail("ddqn.lr", "must be positive");
  if (d.batch < 1) fail("ddqn.batch", "must be at least 1");
  if (d.buffer < d.batch) fail("ddqn.buffer", "must hold at least one batch");
  if (d.target_period < 1) fail("ddqn.target_period", "must be at least 1");
  if (!(d.gamma >= 0.0 && d.gamma < 1.0)) fail("ddqn.gamma", "must be in [0, 1)");

  const auto& g = config.hyper.ddpg;
  if (g.actor_hidden.empty()) fail("ddpg.actor_hidden", "needs at least one layer");
  for (int h : g.actor_hidden) if (h < 1) fail("ddpg.actor_hidden", "layer sizes must be positive");
  if (g.critic_state_hidden < 1) fail("ddpg.critic_state_hidden", "must be positive");
  if (g.critic_joint_hidden < 1) fail("ddpg.critic_joint_hidden", "must be positive");
  if (!(g.actor_lr > 0.0)) fail("ddpg.actor_lr", "must be positive");
  if (!(g.critic_lr > 0.0)) fail("ddpg.critic_lr", "must be positive");
  if (g.batch < 1) fail("ddpg.batch", "must be at least 1");
  if (g.buffer < g.batch) fail("ddpg.buffer", "must hold at least one batch");
  if (!(g.tau > 0.0 && g.tau <= 1.0)) fail("ddpg.tau", "must be in (0, 1]");
  if (!(g.price_max > g.price_min)) fail("ddpg.price_max", "must exceed ddpg.price_min");
  if (!(g.gamma >= 0.0 && g.gamma < 1.0)) fail("ddpg.gamma", "must be in [0, 1)");
}

std::string FormatConfig(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, value] : ResolvedKeys(config)) {
    out += key + ": " + value + "\n";
  }
  return out;
}

}  // namespace collusion
