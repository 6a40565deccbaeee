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

#include "collusion/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "collusion/benchmarks.h"
#include "collusion/config.h"
#include "collusion/error.h"
#include "collusion/runner.h"
#include "collusion/tables.h"

namespace collusion {
namespace {

struct CommonOptions {
  std::string config = "paper_grid";
  std::vector<std::string> sets;
  std::optional<int> seeds;
  std::optional<std::string> out;
  std::optional<int> jobs;
  bool series = false;
  bool quiet = false;
};

void AddCommon(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "preset name or YAML file")
      ->capture_default_str();
  app->add_option("--set", o.sets, "KEY=VALUE override (repeatable)");
  app->add_option("--seeds", o.seeds, "replicates per cell");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--jobs", o.jobs, "worker threads (0: one per core)");
  app->add_flag("--series", o.series, "persist per-period series");
  app->add_flag("--quiet", o.quiet, "suppress progress lines");
}

// File, then environment, then --set, then dedicated flags.
ExperimentConfig Resolve(const CommonOptions& o) {
  ExperimentConfig c = LoadConfig(o.config);
  ApplyEnvironment(c);
  for (const auto& s : o.sets) ApplyOverride(c, s);
  if (o.seeds) c.seeds = *o.seeds;
  if (o.out) c.output = *o.out;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.series) c.series = true;
  Validate(c);
  return c;
}

int CmdRun(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = Resolve(o);
  ProgressFn progress;
  if (!o.quiet) {
    progress = [&out](const RunResult& r, int done, int total) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.1fs", r.wall_seconds);
      out << "[" << done << "/" << total << "] " << r.cell.Id() << " seed "
          << r.seed << " " << (r.ok ? "ok" : "FAILED: " + r.error) << " "
          << buf << std::endl;
    };
  }
  const GridResult result = RunGrid(config, progress);
  std::vector<std::string> failures = WriteOutputs(config, result);
  const auto table_failures = WriteTables(result.summaries, config.output);
  failures.insert(failures.end(), table_failures.begin(), table_failures.end());
  for (const auto& f : failures) err << "error: could not write " << f << "\n";
  for (const auto& e : result.benchmark_errors) err << "benchmark failure: " << e << "\n";
  if (!o.quiet) {
    out << result.runs.size() - static_cast<std::size_t>(result.failed_runs)
        << " of " << result.runs.size() << " runs succeeded; results in "
        << config.output << "\n";
  }
  if (!result.benchmark_errors.empty()) return kExitBenchmark;
  if (result.failed_runs > 0 || !failures.empty()) return kExitPartial;
  return kExitOk;
}

int CmdBenchmark(const CommonOptions& o, const std::vector<std::string>& markets,
                 const std::vector<std::string>& regimes, std::ostream& out,
                 std::ostream& err) {
  ExperimentConfig config = Resolve(o);
  if (!markets.empty()) {
    config.markets.clear();
    for (const auto& m : markets) config.markets.push_back(ParseMarket(m));
  }
  if (!regimes.empty()) {
    config.regimes.clear();
    for (const auto& r : regimes) config.regimes.push_back(ParseRegime(r));
  }
  std::vector<std::pair<std::pair<MarketModel, RegimeName>, Benchmarks>> rows;
  for (MarketModel m : config.markets) {
    for (RegimeName r : config.regimes) {
      try {
        rows.push_back({{m, r},
                        BenchmarksFor(MarketParams::Preset(m), RegimeParams(r),
                                      config.benchmark_samples,
                                      config.benchmark_seed)});
      } catch (const BenchmarkError& e) {
        err << "benchmark failure for " << MarketName(m) << "/" << RegimeLabel(r)
            << ": " << e.what() << "; last iterate " << e.last_iterate()
            << ", residual " << e.residual() << "\n";
        return kExitBenchmark;
      }
    }
  }
  const std::string csv = BenchmarkCsv(rows);
  out << csv;
  if (o.out) {
    const std::filesystem::path path = std::filesystem::path(*o.out) / "benchmarks.csv";
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << csv)) {
      err << "error: could not write " << path.string() << "\n";
      return kExitPartial;
    }
  }
  return kExitOk;
}

int CmdTables(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = Resolve(o);
  const std::filesystem::path path =
      std::filesystem::path(config.output) / "summary.csv";
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: no summary at " << path.string() << "\n";
    return kExitConfig;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const auto summaries = ParseSummaryCsv(buf.str());
  const auto failures = WriteTables(summaries, config.output);
  for (const auto& f : failures) err << "error: could not write " << f << "\n";
  if (!o.quiet) {
    out << "tables for " << summaries.size() << " cells written to "
        << config.output << "\n";
  }
  return failures.empty() ? kExitOk : kExitPartial;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Pricing-algorithm collusion laboratory"};
  app.require_subcommand(1);
  CommonOptions run_opts, bench_opts, table_opts, validate_opts;
  std::vector<std::string> markets, regimes;

  CLI::App* run = app.add_subcommand("run", "run the experiment grid");
  AddCommon(run, run_opts);
  CLI::App* bench = app.add_subcommand("benchmark", "print Nash/monopoly benchmarks");
  AddCommon(bench, bench_opts);
  bench->add_option("--market", markets, "market (repeatable)");
  bench->add_option("--regime", regimes, "shock regime (repeatable)");
  CLI::App* tables = app.add_subcommand("tables", "regenerate tables from summary.csv");
  AddCommon(tables, table_opts);
  CLI::App* validate = app.add_subcommand("validate", "print the resolved config");
  AddCommon(validate, validate_opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (run->parsed()) return CmdRun(run_opts, out, err);
    if (bench->parsed()) return CmdBenchmark(bench_opts, markets, regimes, out, err);
    if (tables->parsed()) return CmdTables(table_opts, out, err);
    if (validate->parsed()) {
      out << FormatConfig(Resolve(validate_opts));
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BenchmarkError& e) {
    err << "benchmark failure: " << e.what() << "; last iterate "
        << e.last_iterate() << ", residual " << e.residual() << "\n";
    return kExitBenchmark;
  }
  return kExitConfig;
}

}  // namespace collusion
