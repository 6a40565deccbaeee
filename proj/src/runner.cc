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

#include "collusion/runner.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "collusion/error.h"
#include "json.hpp"

namespace collusion {
namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Num(double x) {
  if (!std::isfinite(x)) return "NA";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string Num(const std::optional<double>& x) {
  return x ? Num(*x) : std::string("NA");
}

double ParseNum(const std::string& s) {
  if (s == "NA" || s.empty()) return kNaN;
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("summary: cannot parse number '" + s + "'");
  }
  return x;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Moments MomentsOf(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return {kNaN, kNaN};
  double total = 0.0;
  for (double x : xs) total += x;
  m.mean = total / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

RunMetrics ComputeMetrics(const WindowStats& stats, const RunContext& ctx) {
  RunMetrics m;
  const Benchmarks& b = ctx.benchmarks;
  for (int f = 0; f < 2; ++f) {
    m.delta[f] = DeltaIndex(stats.mean_profit[f], b.pi_nash, b.pi_mono);
    m.rpdi[f] = Rpdi(stats.mean_price[f], b.p_nash, b.p_mono);
  }
  m.eff_ratio = EfficiencyRatio(0.5 * (m.delta[0] + m.delta[1]),
                                0.5 * (m.rpdi[0] + m.rpdi[1]));
  if (ctx.cs_nash) {
    const double cs = LogitConsumerSurplus(stats.mean_price, ctx.market,
                                           ctx.regime, ctx.cs_samples,
                                           ctx.cs_seed);
    m.cs_change_pct = CsChangePct(cs, *ctx.cs_nash);
  }
  return m;
}

void WriteFile(const fs::path& path, const std::string& text,
               std::vector<std::string>& failures) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) failures.push_back(path.string());
}

}  // namespace

std::string Cell::Id() const {
  return std::string(AgentName(agent0)) + "-" + std::string(AgentName(agent1)) +
         "_" + std::string(MarketName(market)) + "_" +
         std::string(RegimeLabel(regime));
}

Cell ParseCellId(const std::string& id) {
  const auto dash = id.find('-');
  const auto u1 = id.find('_', dash == std::string::npos ? 0 : dash);
  const auto u2 = u1 == std::string::npos ? u1 : id.find('_', u1 + 1);
  if (dash == std::string::npos || u1 == std::string::npos ||
      u2 == std::string::npos) {
    throw ConfigError("malformed cell id '" + id + "'");
  }
  Cell c;
  c.agent0 = ParseAgent(id.substr(0, dash));
  c.agent1 = ParseAgent(id.substr(dash + 1, u1 - dash - 1));
  c.market = ParseMarket(id.substr(u1 + 1, u2 - u1 - 1));
  c.regime = ParseRegime(id.substr(u2 + 1));
  return c;
}

std::vector<Cell> ExpandCells(const ExperimentConfig& config) {
  std::vector<Pairing> pairings = config.pairings;
  if (config.swap_roles) {
    for (const Pairing& p : config.pairings) {
      if (p.first == p.second) continue;
      const Pairing swapped{p.second, p.first};
      if (std::find(pairings.begin(), pairings.end(), swapped) == pairings.end()) {
        pairings.push_back(swapped);
      }
    }
  }
  std::vector<Cell> cells;
  for (const Pairing& p : pairings) {
    for (MarketModel m : config.markets) {
      for (RegimeName r : config.regimes) {
        cells.push_back({p.first, p.second, m, r});
      }
    }
  }
  return cells;
}

RunContext MakeRunContext(const Cell& cell, const ExperimentConfig& config,
                          const Benchmarks& benchmarks) {
  const MarketParams market = MarketParams::Preset(cell.market);
  RunContext ctx{
      .market = market,
      .grid = BuildPriceGrid(market.p_nash, market.p_mono, config.grid_upper),
      .regime = RegimeParams(cell.regime),
      .benchmarks = benchmarks,
      .cs_nash = std::nullopt,
      .horizon = config.horizon,
      .window = config.window,
      .series = config.series,
      .series_stride = config.series_stride,
      .cs_samples = config.benchmark_samples,
      .cs_seed = config.benchmark_seed,
      .hyper = config.hyper,
  };
  if (cell.market == MarketModel::kLogit) {
    ctx.cs_nash = LogitConsumerSurplus({benchmarks.p_nash, benchmarks.p_nash},
                                       market, ctx.regime, ctx.cs_samples,
                                       ctx.cs_seed);
  }
  return ctx;
}

RunResult RunOnce(const Cell& cell, std::uint64_t seed, const RunContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const std::string id = cell.Id();
  RunResult result;
  result.cell = cell;
  result.seed = seed;

  std::array<Rng, 2> init = {MakeStream(seed, id, "init.firm0"),
                             MakeStream(seed, id, "init.firm1")};
  std::array<Rng, 2> play = {MakeStream(seed, id, "agent.firm0"),
                             MakeStream(seed, id, "agent.firm1")};
  std::array<std::unique_ptr<PricingAgent>, 2> agents = {
      MakeAgent(cell.agent0, ctx.market, ctx.grid, ctx.hyper, init[0]),
      MakeAgent(cell.agent1, ctx.market, ctx.grid, ctx.hyper, init[1])};
  ShockState shocks = ShockState::Seeded(DeriveSeed(seed, id, "shocks.firm0"),
                                         DeriveSeed(seed, id, "shocks.firm1"));

  Rng start_rng = MakeStream(seed, id, "initial");
  std::uniform_int_distribution<int> pick(0, kGridSize - 1);
  std::array<double, 2> last = {ctx.grid[pick(start_rng)],
                                ctx.grid[pick(start_rng)]};

  std::array<std::vector<double>, 2> prices;
  std::array<std::vector<double>, 2> profits;
  for (int f = 0; f < 2; ++f) {
    prices[f].reserve(static_cast<std::size_t>(ctx.horizon));
    profits[f].reserve(static_cast<std::size_t>(ctx.horizon));
  }

  for (std::int64_t t = 0; t < ctx.horizon; ++t) {
    std::array<Observation, 2> obs = {Observation{last[0], last[1], t},
                                      Observation{last[1], last[0], t}};
    const std::array<double, 2> p = {agents[0]->Act(obs[0], play[0]),
                                     agents[1]->Act(obs[1], play[1])};
    const ShockPair z = shocks.z;
    const MarketOutcome out = Step(ctx.market, p[0], p[1], z);
    for (int f = 0; f < 2; ++f) {
      if (!std::isfinite(p[f]) || !std::isfinite(out.profits[f])) {
        result.error = "non-finite price or profit for firm " +
                       std::to_string(f) + " at period " + std::to_string(t) +
                       " (price " + Num(p[f]) + ", profit " +
                       Num(out.profits[f]) + ")";
        result.wall_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
        return result;
      }
    }
    for (int f = 0; f < 2; ++f) {
      const int r = 1 - f;
      Feedback fb;
      fb.obs = obs[f];
      fb.own_price = p[f];
      fb.opp_price = p[r];
      fb.profit = out.profits[f];
      fb.next_obs = Observation{p[f], p[r], t + 1};
      const MarketParams& market = ctx.market;
      const ShockPair seen = ctx.hyper.pso.oracle_shocks ? z : ShockPair{0.0, 0.0};
      fb.profit_oracle = [&market, f, rival = p[r], seen](double own) {
        return FirmProfit(market, f, own, rival, seen);
      };
      agents[f]->Learn(fb, play[f]);
      prices[f].push_back(p[f]);
      profits[f].push_back(out.profits[f]);
    }
    if (ctx.series && t % ctx.series_stride == 0) {
      result.series.push_back({t, p, out.profits, z});
    }
    last = p;
    Ar1Step(shocks, ctx.regime);
  }

  result.stats = ComputeWindowStats(prices, profits, ctx.window);
  result.metrics = ComputeMetrics(result.stats, ctx);
  result.ok = true;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

CellSummary Summarize(const Cell& cell, const Benchmarks& benchmarks,
                      const std::vector<RunResult>& runs) {
  CellSummary s;
  s.cell = cell;
  s.benchmarks = benchmarks;
  std::array<std::vector<double>, 2> delta, rpdi, price, profit;
  std::vector<double> cs;
  for (const RunResult& r : runs) {
    if (!r.ok) {
      ++s.failures;
      continue;
    }
    ++s.seeds;
    for (int f = 0; f < 2; ++f) {
      delta[f].push_back(r.metrics.delta[f]);
      rpdi[f].push_back(r.metrics.rpdi[f]);
      price[f].push_back(r.stats.mean_price[f]);
      profit[f].push_back(r.stats.mean_profit[f]);
    }
    if (r.metrics.cs_change_pct) cs.push_back(*r.metrics.cs_change_pct);
  }
  for (int f = 0; f < 2; ++f) {
    s.firms[f] = {cell.agent(f), MomentsOf(delta[f]), MomentsOf(rpdi[f]),
                  MomentsOf(price[f]), MomentsOf(profit[f])};
  }
  if (!cs.empty()) s.cs_change_pct = MomentsOf(cs).mean;
  return s;
}

GridResult RunGrid(const ExperimentConfig& config, const ProgressFn& progress) {
  Validate(config);
  GridResult result;
  const std::vector<Cell> cells = ExpandCells(config);

  // Benchmarks first, serially, in a fixed order.
  std::map<std::pair<MarketModel, RegimeName>, std::optional<Benchmarks>> bench;
  std::map<std::pair<MarketModel, RegimeName>, std::string> bench_error;
  for (const Cell& c : cells) {
    const auto key = std::make_pair(c.market, c.regime);
    if (bench.count(key)) continue;
    try {
      bench[key] = BenchmarksFor(MarketParams::Preset(c.market),
                                 RegimeParams(c.regime),
                                 config.benchmark_samples, config.benchmark_seed);
      result.benchmarks.emplace_back(key, *bench[key]);
    } catch (const BenchmarkError& e) {
      bench[key] = std::nullopt;
      bench_error[key] = std::string(e.what()) + " (last iterate " +
                         Num(e.last_iterate()) + ", residual " +
                         Num(e.residual()) + ")";
      result.benchmark_errors.push_back(
          std::string(MarketName(c.market)) + "/" +
          std::string(RegimeLabel(c.regime)) + ": " + bench_error[key]);
    }
  }

  struct Task {
    std::size_t cell;
    int replicate;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (int r = 0; r < config.seeds; ++r) tasks.push_back({i, r});
  }
  std::vector<std::optional<RunContext>> contexts(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& b = bench[{cells[i].market, cells[i].regime}];
    if (b) contexts[i] = MakeRunContext(cells[i], config, *b);
  }

  result.runs.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  int done = 0;
  const int total = static_cast<int>(tasks.size());
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      const Cell& cell = cells[task.cell];
      const std::uint64_t seed =
          config.base_seed + static_cast<std::uint64_t>(task.replicate);
      RunResult r;
      if (!contexts[task.cell]) {
        r.cell = cell;
        r.seed = seed;
        r.error = "benchmark unavailable: " + bench_error[{cell.market, cell.regime}];
      } else {
        try {
          r = RunOnce(cell, seed, *contexts[task.cell]);
        } catch (const std::exception& e) {
          r = RunResult{};
          r.cell = cell;
          r.seed = seed;
          r.error = e.what();
        }
      }
      r.replicate = task.replicate;
      result.runs[k] = std::move(r);
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(result.runs[k], ++done, total);
      }
    }
  };
  int jobs = config.jobs > 0
                 ? config.jobs
                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, std::max(1, total));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t k = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<RunResult> runs(result.runs.begin() + static_cast<std::ptrdiff_t>(k),
                                result.runs.begin() + static_cast<std::ptrdiff_t>(k + static_cast<std::size_t>(config.seeds)));
    k += static_cast<std::size_t>(config.seeds);
    const auto& b = bench[{cells[i].market, cells[i].regime}];
    Benchmarks used = b ? *b : Benchmarks{};
    if (!b) {
      used.p_nash = used.p_mono = used.pi_nash = used.pi_mono = kNaN;
      used.regime = RegimeParams(cells[i].regime);
    }
    result.summaries.push_back(Summarize(cells[i], used, runs));
  }
  for (const RunResult& r : result.runs) {
    if (!r.ok) ++result.failed_runs;
  }
  return result;
}

namespace {

const char* kSummaryHeader =
    "cell_id,agent0,agent1,market,regime,firm,agent,seeds,failures,"
    "delta_mean,delta_sd,rpdi_mean,rpdi_sd,price_mean,price_sd,profit_mean,"
    "profit_sd,cs_change_pct,p_nash,p_mono,pi_nash,pi_mono";

}  // namespace

std::string SummaryCsv(const std::vector<CellSummary>& summaries) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const CellSummary& s : summaries) {
    for (int f = 0; f < 2; ++f) {
      const FirmSummary& fs = s.firms[f];
      out += s.cell.Id() + "," + std::string(AgentName(s.cell.agent0)) + "," +
             std::string(AgentName(s.cell.agent1)) + "," +
             std::string(MarketName(s.cell.market)) + "," +
             std::string(RegimeLabel(s.cell.regime)) + "," + std::to_string(f) +
             "," + std::string(AgentName(fs.agent)) + "," +
             std::to_string(s.seeds) + "," + std::to_string(s.failures) + "," +
             Num(fs.delta.mean) + "," + Num(fs.delta.sd) + "," +
             Num(fs.rpdi.mean) + "," + Num(fs.rpdi.sd) + "," +
             Num(fs.price.mean) + "," + Num(fs.price.sd) + "," +
             Num(fs.profit.mean) + "," + Num(fs.profit.sd) + "," +
             Num(s.cs_change_pct) + "," + Num(s.benchmarks.p_nash) + "," +
             Num(s.benchmarks.p_mono) + "," + Num(s.benchmarks.pi_nash) + "," +
             Num(s.benchmarks.pi_mono) + "\n";
    }
  }
  return out;
}

std::vector<CellSummary> ParseSummaryCsv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw ConfigError("summary: unexpected header");
  }
  std::vector<CellSummary> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 22) {
      throw ConfigError("summary line " + std::to_string(lineno) +
                        ": expected 22 fields");
    }
    const Cell cell = ParseCellId(f[0]);
    const int firm = std::stoi(f[5]);
    if (out.empty() || out.back().cell.Id() != f[0] || firm == 0) {
      CellSummary s;
      s.cell = cell;
      s.seeds = std::stoi(f[7]);
      s.failures = std::stoi(f[8]);
      s.benchmarks.regime = RegimeParams(cell.regime);
      s.benchmarks.p_nash = ParseNum(f[18]);
      s.benchmarks.p_mono = ParseNum(f[19]);
      s.benchmarks.pi_nash = ParseNum(f[20]);
      s.benchmarks.pi_mono = ParseNum(f[21]);
      const double cs = ParseNum(f[17]);
      if (std::isfinite(cs)) s.cs_change_pct = cs;
      s.firms[0].agent = cell.agent0;
      s.firms[1].agent = cell.agent1;
      out.push_back(s);
    }
    if (firm < 0 || firm > 1) {
      throw ConfigError("summary line " + std::to_string(lineno) + ": bad firm");
    }
    FirmSummary& fs = out.back().firms[firm];
    fs.agent = ParseAgent(f[6]);
    fs.delta = {ParseNum(f[9]), ParseNum(f[10])};
    fs.rpdi = {ParseNum(f[11]), ParseNum(f[12])};
    fs.price = {ParseNum(f[13]), ParseNum(f[14])};
    fs.profit = {ParseNum(f[15]), ParseNum(f[16])};
  }
  return out;
}

std::string BenchmarkCsv(
    const std::vector<std::pair<std::pair<MarketModel, RegimeName>, Benchmarks>>&
        rows) {
  std::string out = "market,regime,p_nash,p_mono,pi_nash,pi_mono,samples,seed\n";
  for (const auto& [key, b] : rows) {
    out += std::string(MarketName(key.first)) + "," +
           std::string(RegimeLabel(key.second)) + "," + Num(b.p_nash) + "," +
           Num(b.p_mono) + "," + Num(b.pi_nash) + "," + Num(b.pi_mono) + "," +
           std::to_string(b.mc_samples) + "," + std::to_string(b.mc_seed) + "\n";
  }
  return out;
}

std::vector<std::string> WriteOutputs(const ExperimentConfig& config,
                                      const GridResult& result) {
  std::vector<std::string> failures;
  const fs::path root(config.output);

  WriteFile(root / "summary.csv", SummaryCsv(result.summaries), failures);

  std::string runs =
      "cell_id,seed,replicate,status,price_firm0,price_firm1,profit_firm0,"
      "profit_firm1,delta_firm0,delta_firm1,rpdi_firm0,rpdi_firm1,eff_ratio,"
      "cs_change_pct\n";
  for (const RunResult& r : result.runs) {
    runs += r.cell.Id() + "," + std::to_string(r.seed) + "," +
            std::to_string(r.replicate) + "," + (r.ok ? "ok" : "failed");
    if (r.ok) {
      runs += "," + Num(r.stats.mean_price[0]) + "," + Num(r.stats.mean_price[1]) +
              "," + Num(r.stats.mean_profit[0]) + "," +
              Num(r.stats.mean_profit[1]) + "," + Num(r.metrics.delta[0]) + "," +
              Num(r.metrics.delta[1]) + "," + Num(r.metrics.rpdi[0]) + "," +
              Num(r.metrics.rpdi[1]) + "," + Num(r.metrics.eff_ratio) + "," +
              Num(r.metrics.cs_change_pct);
    } else {
      runs += ",NA,NA,NA,NA,NA,NA,NA,NA,NA,NA";
    }
    runs += "\n";
  }
  WriteFile(root / "runs.csv", runs, failures);
  WriteFile(root / "benchmarks.csv", BenchmarkCsv(result.benchmarks), failures);

  if (config.series) {
    for (const RunResult& r : result.runs) {
      if (r.series.empty()) continue;
      std::string text = "t,price_firm0,price_firm1,profit_firm0,profit_firm1,"
                         "shock_firm0,shock_firm1\n";
      for (const SeriesRow& row : r.series) {
        text += std::to_string(row.t) + "," + Num(row.prices[0]) + "," +
                Num(row.prices[1]) + "," + Num(row.profits[0]) + "," +
                Num(row.profits[1]) + "," + Num(row.shocks[0]) + "," +
                Num(row.shocks[1]) + "\n";
      }
      WriteFile(root / "runs" / r.cell.Id() / (std::to_string(r.seed) + ".csv"),
                text, failures);
    }
  }

  nlohmann::ordered_json manifest;
  nlohmann::ordered_json cfg;
  for (const auto& [key, value] : ResolvedKeys(config)) cfg[key] = value;
  manifest["config"] = cfg;
  manifest["seed_policy"] = {
      {"replicate_seed", "base_seed + replicate"},
      {"substreams", "SplitMix64(SplitMix64(seed ^ FNV1a(cell_id)) ^ FNV1a(role))"},
      {"roles", {"init.firm0", "init.firm1", "agent.firm0", "agent.firm1",
                 "shocks.firm0", "shocks.firm1", "initial"}},
      {"seeds", config.seeds},
      {"base_seed", config.base_seed}};
  nlohmann::ordered_json bench = nlohmann::ordered_json::array();
  for (const auto& [key, b] : result.benchmarks) {
    bench.push_back({{"market", MarketName(key.first)},
                     {"regime", RegimeLabel(key.second)},
                     {"p_nash", b.p_nash},
                     {"p_mono", b.p_mono},
                     {"pi_nash", b.pi_nash},
                     {"pi_mono", b.pi_mono},
                     {"mc_samples", b.mc_samples},
                     {"mc_seed", b.mc_seed}});
  }
  manifest["benchmarks"] = bench;
  manifest["benchmark_store"] = "benchmarks.csv";
  manifest["benchmark_errors"] = result.benchmark_errors;
  nlohmann::ordered_json runs_json = nlohmann::ordered_json::array();
  for (const RunResult& r : result.runs) {
    nlohmann::ordered_json j = {{"cell", r.cell.Id()},
                                {"seed", r.seed},
                                {"status", r.ok ? "ok" : "failed"},
                                {"wall_seconds", r.wall_seconds}};
    if (!r.ok) j["error"] = r.error;
    runs_json.push_back(j);
  }
  manifest["runs"] = runs_json;
  manifest["failed_runs"] = result.failed_runs;
  WriteFile(root / "manifest.json", manifest.dump(2) + "\n", failures);
  return failures;
}

}  // namespace collusion
