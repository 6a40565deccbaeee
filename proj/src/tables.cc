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

#include "collusion/tables.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

namespace collusion {
namespace {

constexpr std::array<MarketModel, 3> kMarkets = {
    MarketModel::kLogit, MarketModel::kHotelling, MarketModel::kLinear};

std::string Fmt(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *x);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string Row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ",";
    out += fields[i];
  }
  return out + "\n";
}

std::optional<double> Finite(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  return x;
}

class Index {
 public:
  explicit Index(const std::vector<CellSummary>& summaries) {
    for (const CellSummary& s : summaries) by_id_[s.cell.Id()] = &s;
  }

  const CellSummary* Find(AgentKind a0, AgentKind a1, MarketModel m,
                          RegimeName r) const {
    const auto it = by_id_.find(Cell{a0, a1, m, r}.Id());
    return it == by_id_.end() ? nullptr : it->second;
  }

  // Two-firm mean of a homogeneous cell.
  std::optional<double> HomDelta(AgentKind a, MarketModel m, RegimeName r) const {
    const CellSummary* s = Find(a, a, m, r);
    if (!s) return std::nullopt;
    return Finite(0.5 * (s->firms[0].delta.mean + s->firms[1].delta.mean));
  }
  std::optional<double> HomRpdi(AgentKind a, MarketModel m, RegimeName r) const {
    const CellSummary* s = Find(a, a, m, r);
    if (!s) return std::nullopt;
    return Finite(0.5 * (s->firms[0].rpdi.mean + s->firms[1].rpdi.mean));
  }
  std::optional<double> HomPrice(AgentKind a, MarketModel m, RegimeName r) const {
    const CellSummary* s = Find(a, a, m, r);
    if (!s) return std::nullopt;
    return Finite(0.5 * (s->firms[0].price.mean + s->firms[1].price.mean));
  }

 private:
  std::map<std::string, const CellSummary*> by_id_;
};

std::vector<AgentKind> HomogeneousAgents(const std::vector<CellSummary>& summaries,
                                         std::optional<MarketModel> market) {
  std::vector<AgentKind> out;
  for (AgentKind a : kAllAgents) {
    const bool present = std::any_of(
        summaries.begin(), summaries.end(), [&](const CellSummary& s) {
          return s.cell.agent0 == a && s.cell.agent1 == a &&
                 (!market || s.cell.market == *market);
        });
    if (present) out.push_back(a);
  }
  return out;
}

std::string Name(AgentKind a) { return std::string(AgentName(a)); }
std::string Name(MarketModel m) { return std::string(MarketName(m)); }
std::string Name(RegimeName r) { return std::string(RegimeLabel(r)); }

std::string Baseline(const std::vector<CellSummary>& summaries, const Index& idx) {
  std::vector<std::string> header{"algorithm"};
  for (MarketModel m : kMarkets) {
    header.push_back(Name(m) + "_delta");
    header.push_back(Name(m) + "_rpdi");
  }
  std::string out = Row(header);
  for (AgentKind a : HomogeneousAgents(summaries, std::nullopt)) {
    std::vector<std::string> row{Name(a)};
    for (MarketModel m : kMarkets) {
      row.push_back(Fmt(idx.HomDelta(a, m, RegimeName::kNone)));
      row.push_back(Fmt(idx.HomRpdi(a, m, RegimeName::kNone)));
    }
    out += Row(row);
  }
  return out;
}

std::string Efficiency(const std::vector<CellSummary>& summaries, const Index& idx) {
  std::vector<std::string> header{"algorithm"};
  for (MarketModel m : kMarkets) header.push_back(Name(m));
  std::string out = Row(header);
  for (AgentKind a : HomogeneousAgents(summaries, std::nullopt)) {
    std::vector<std::string> row{Name(a)};
    for (MarketModel m : kMarkets) {
      const auto d = idx.HomDelta(a, m, RegimeName::kNone);
      const auto r = idx.HomRpdi(a, m, RegimeName::kNone);
      std::optional<double> ratio;
      if (d && r) ratio = EfficiencyRatio(*d, *r);
      row.push_back(Fmt(ratio));
    }
    out += Row(row);
  }
  return out;
}

std::string ShockImpact(const std::vector<CellSummary>& summaries,
                        const Index& idx, MarketModel m) {
  std::vector<std::string> header{"algorithm"};
  for (RegimeName r : kAllRegimes) {
    header.push_back(Name(r) + "_delta");
    header.push_back(Name(r) + "_rpdi");
  }
  std::string out = Row(header);
  for (AgentKind a : HomogeneousAgents(summaries, m)) {
    std::vector<std::string> row{Name(a)};
    for (RegimeName r : kAllRegimes) {
      row.push_back(Fmt(idx.HomDelta(a, m, r)));
      row.push_back(Fmt(idx.HomRpdi(a, m, r)));
    }
    out += Row(row);
  }
  return out;
}

std::string Heterogeneous(const std::vector<CellSummary>& summaries,
                          const Index& idx) {
  std::string out = Row({"pairing", "market", "regime", "firm", "agent", "delta", "rpdi"});
  std::vector<std::pair<AgentKind, AgentKind>> pairings;
  std::set<MarketModel> markets;
  std::set<RegimeName> regimes;
  for (const CellSummary& s : summaries) {
    if (s.cell.Homogeneous()) continue;
    markets.insert(s.cell.market);
    regimes.insert(s.cell.regime);
  }
  // Canonical order: the unordered pairs first, role-swapped pairs after.
  for (int swapped = 0; swapped < 2; ++swapped) {
    for (std::size_t i = 0; i < kAllAgents.size(); ++i) {
      for (std::size_t j = i + 1; j < kAllAgents.size(); ++j) {
        const auto p = swapped ? std::make_pair(kAllAgents[j], kAllAgents[i])
                               : std::make_pair(kAllAgents[i], kAllAgents[j]);
        const bool present = std::any_of(
            summaries.begin(), summaries.end(), [&](const CellSummary& s) {
              return s.cell.agent0 == p.first && s.cell.agent1 == p.second;
            });
        if (present) pairings.push_back(p);
      }
    }
  }
  for (const auto& p : pairings) {
    const std::string label = Name(p.first) + "-" + Name(p.second);
    for (MarketModel m : markets) {
      for (RegimeName r : regimes) {
        const CellSummary* s = idx.Find(p.first, p.second, m, r);
        for (int f = 0; f < 2; ++f) {
          const AgentKind agent = f == 0 ? p.first : p.second;
          std::optional<double> d, rp;
          if (s) {
            d = Finite(s->firms[f].delta.mean);
            rp = Finite(s->firms[f].rpdi.mean);
          }
          out += Row({label, Name(m), Name(r), std::to_string(f), Name(agent),
                      Fmt(d), Fmt(rp)});
        }
      }
    }
  }
  return out;
}

std::string DeltaChangeTable(const std::vector<CellSummary>& summaries,
                             const Index& idx) {
  std::vector<std::string> header{"algorithm"};
  for (MarketModel m : kMarkets) {
    for (RegimeName r : kAllRegimes) {
      if (r != RegimeName::kNone) header.push_back(Name(m) + "_" + Name(r));
    }
  }
  std::string out = Row(header);
  for (AgentKind a : HomogeneousAgents(summaries, std::nullopt)) {
    std::vector<std::string> row{Name(a)};
    for (MarketModel m : kMarkets) {
      const auto base = idx.HomDelta(a, m, RegimeName::kNone);
      for (RegimeName r : kAllRegimes) {
        if (r == RegimeName::kNone) continue;
        const auto shock = idx.HomDelta(a, m, r);
        std::optional<double> change;
        if (base && shock) change = DeltaChange(*shock, *base);
        row.push_back(Fmt(change));
      }
    }
    out += Row(row);
  }
  return out;
}

std::string LogitPrices(const std::vector<CellSummary>& summaries,
                        const Index& idx) {
  std::vector<std::string> header{"algorithm"};
  for (RegimeName r : kAllRegimes) header.push_back(Name(r));
  std::string out = Row(header);
  const MarketModel m = MarketModel::kLogit;
  for (AgentKind a : HomogeneousAgents(summaries, m)) {
    std::vector<std::string> row{Name(a)};
    for (RegimeName r : kAllRegimes) row.push_back(Fmt(idx.HomPrice(a, m, r)));
    out += Row(row);
  }
  std::map<RegimeName, const CellSummary*> any;
  for (const CellSummary& s : summaries) {
    if (s.cell.market == m && !any.count(s.cell.regime)) any[s.cell.regime] = &s;
  }
  if (!any.empty()) {
    std::vector<std::string> nash{"Nash (Shock-Adj.)"};
    std::vector<std::string> mono{"Monopoly (Shock-Adj.)"};
    for (RegimeName r : kAllRegimes) {
      const auto it = any.find(r);
      nash.push_back(it == any.end() ? "NA" : Fmt(Finite(it->second->benchmarks.p_nash)));
      mono.push_back(it == any.end() ? "NA" : Fmt(Finite(it->second->benchmarks.p_mono)));
    }
    out += Row(nash);
    out += Row(mono);
  }
  return out;
}

std::string ConsumerSurplus(const std::vector<CellSummary>& summaries,
                            const Index& idx) {
  std::vector<std::string> header{"algorithm"};
  for (RegimeName r : kAllRegimes) header.push_back(Name(r));
  std::string out = Row(header);
  const MarketModel m = MarketModel::kLogit;
  for (AgentKind a : HomogeneousAgents(summaries, m)) {
    std::vector<std::string> row{Name(a)};
    for (RegimeName r : kAllRegimes) {
      const CellSummary* s = idx.Find(a, a, m, r);
      row.push_back(Fmt(s ? s->cs_change_pct : std::nullopt));
    }
    out += Row(row);
  }
  return out;
}

std::string Scatter(const std::vector<CellSummary>& summaries) {
  std::string out = Row({"cell_id", "market", "regime", "firm", "agent",
                         "opponent", "delta", "rpdi"});
  for (const CellSummary& s : summaries) {
    for (int f = 0; f < 2; ++f) {
      out += Row({s.cell.Id(), Name(s.cell.market), Name(s.cell.regime),
                  std::to_string(f), Name(s.cell.agent(f)),
                  Name(s.cell.agent(1 - f)), Fmt(Finite(s.firms[f].delta.mean)),
                  Fmt(Finite(s.firms[f].rpdi.mean))});
    }
  }
  return out;
}

}  // namespace

std::vector<TableFile> MakeTables(const std::vector<CellSummary>& summaries) {
  const Index idx(summaries);
  return {
      {"tables/table_baseline.csv", Baseline(summaries, idx)},
      {"tables/table_efficiency.csv", Efficiency(summaries, idx)},
      {"tables/table_shock_logit.csv", ShockImpact(summaries, idx, MarketModel::kLogit)},
      {"tables/table_shock_hotelling.csv",
       ShockImpact(summaries, idx, MarketModel::kHotelling)},
      {"tables/table_shock_linear.csv", ShockImpact(summaries, idx, MarketModel::kLinear)},
      {"tables/table_heterogeneous.csv", Heterogeneous(summaries, idx)},
      {"tables/table_delta_change.csv", DeltaChangeTable(summaries, idx)},
      {"tables/table_logit_prices.csv", LogitPrices(summaries, idx)},
      {"tables/table_consumer_surplus.csv", ConsumerSurplus(summaries, idx)},
      {"scatter_delta_rpdi.csv", Scatter(summaries)},
  };
}

std::vector<std::string> WriteTables(const std::vector<CellSummary>& summaries,
                                     const std::string& output_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> failures;
  for (const auto& [name, text] : MakeTables(summaries)) {
    const fs::path path = fs::path(output_dir) / name;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) failures.push_back(path.string());
  }
  return failures;
}

}  // namespace collusion
