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

#ifndef COLLUSION_RUNNER_H_
#define COLLUSION_RUNNER_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "collusion/agent.h"
#include "collusion/benchmarks.h"
#include "collusion/config.h"
#include "collusion/market.h"
#include "collusion/metrics.h"
#include "collusion/shocks.h"

namespace collusion {

struct Cell {
  AgentKind agent0 = AgentKind::kQLearning;
  AgentKind agent1 = AgentKind::kQLearning;
  MarketModel market = MarketModel::kLogit;
  RegimeName regime = RegimeName::kNone;

  // e.g. "qlearning-pso_logit_scheme_a".
  std::string Id() const;
  bool Homogeneous() const { return agent0 == agent1; }
  AgentKind agent(int firm) const { return firm == 0 ? agent0 : agent1; }
};

Cell ParseCellId(const std::string& id);  // throws ConfigError

// Pairings x markets x regimes, pairing-major. Role-swapped heterogeneous
// pairings are appended after their originals when requested.
std::vector<Cell> ExpandCells(const ExperimentConfig& config);

struct SeriesRow {
  std::int64_t t = 0;
  std::array<double, 2> prices{};
  std::array<double, 2> profits{};
  ShockPair shocks{};
};

struct RunMetrics {
  std::array<double, 2> delta{};
  std::array<double, 2> rpdi{};
  std::optional<double> eff_ratio;      // mean delta / mean rpdi
  std::optional<double> cs_change_pct;  // logit only
};

struct RunResult {
  Cell cell;
  std::uint64_t seed = 0;
  int replicate = 0;
  bool ok = false;
  std::string error;
  WindowStats stats;
  RunMetrics metrics;
  std::vector<SeriesRow> series;
  double wall_seconds = 0.0;
};

// Everything a run needs besides its seed.
struct RunContext {
  MarketParams market;
  PriceGrid grid;
  ShockRegime regime;
  Benchmarks benchmarks;
  // Consumer surplus at symmetric Nash prices; logit only.
  std::optional<double> cs_nash;
  std::int64_t horizon = 10'000;
  std::int64_t window = 1'000;
  bool series = false;
  int series_stride = 10;
  std::int64_t cs_samples = kDefaultBenchmarkSamples;
  std::uint64_t cs_seed = 0;
  AgentHyperparams hyper;
};

RunContext MakeRunContext(const Cell& cell, const ExperimentConfig& config,
                          const Benchmarks& benchmarks);

// One simulated run. Non-finite prices or profits end the run early with
// ok == false and a diagnostic.
RunResult RunOnce(const Cell& cell, std::uint64_t seed, const RunContext& ctx);

struct Moments {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

struct FirmSummary {
  AgentKind agent = AgentKind::kQLearning;
  Moments delta;
  Moments rpdi;
  Moments price;
  Moments profit;
};

struct CellSummary {
  Cell cell;
  Benchmarks benchmarks;
  int seeds = 0;     // successful runs aggregated
  int failures = 0;  // runs that did not complete
  std::array<FirmSummary, 2> firms;
  std::optional<double> cs_change_pct;  // mean over runs, logit only
};

CellSummary Summarize(const Cell& cell, const Benchmarks& benchmarks,
                      const std::vector<RunResult>& runs);

struct GridResult {
  std::vector<CellSummary> summaries;
  std::vector<RunResult> runs;  // sorted by (cell order, replicate)
  std::vector<std::pair<std::pair<MarketModel, RegimeName>, Benchmarks>>
      benchmarks;
  std::vector<std::string> benchmark_errors;
  int failed_runs = 0;
};

using ProgressFn = std::function<void(const RunResult&, int done, int total)>;

// Runs every cell x replicate on `config.jobs` worker threads. Replicate r
// uses seed base_seed + r. Failures are recorded per run; a benchmark that
// cannot be computed fails every run of its (market, regime).
GridResult RunGrid(const ExperimentConfig& config,
                   const ProgressFn& progress = {});

// Writes summary.csv, runs.csv, benchmarks.csv, manifest.json and, when
// series are on, runs/<cell>/<seed>.csv under config.output. Returns the
// artifacts that could not be written.
std::vector<std::string> WriteOutputs(const ExperimentConfig& config,
                                      const GridResult& result);

// summary.csv round trip.
std::string SummaryCsv(const std::vector<CellSummary>& summaries);
std::vector<CellSummary> ParseSummaryCsv(const std::string& text);
std::string BenchmarkCsv(
    const std::vector<std::pair<std::pair<MarketModel, RegimeName>, Benchmarks>>&
        rows);

}  // namespace collusion

#endif  // COLLUSION_RUNNER_H_
