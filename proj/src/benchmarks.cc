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

#include "collusion/benchmarks.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "collusion/error.h"
#include "collusion/rng.h"

namespace collusion {
namespace {

constexpr std::int64_t kMinSamples = 10'000;
constexpr int kCoarseStride = 20;

}  // namespace

std::pair<double, double> SearchDomain(const MarketParams& params) {
  switch (params.model) {
    case MarketModel::kLogit:
      return {params.c, params.c + 3.0};
    case MarketModel::kHotelling:
      return {params.c, params.v - 0.5 * params.theta};
    case MarketModel::kLinear:
      return {params.c, params.a};
  }
  return {params.c, params.c + 1.0};
}

double LatticeArgmax(const std::function<double(double)>& f, double lo,
                     double hi, double step, double guess) {
  const auto last = static_cast<std::int64_t>(std::llround((hi - lo) / step));
  auto at = [&](std::int64_t k) { return f(lo + static_cast<double>(k) * step); };
  auto clampk = [&](std::int64_t k) { return std::clamp<std::int64_t>(k, 0, last); };

  std::int64_t k = clampk(std::llround((guess - lo) / step));
  double fk = at(k);
  // Coarse hill climb.
  for (;;) {
    const std::int64_t up = clampk(k + kCoarseStride);
    const std::int64_t down = clampk(k - kCoarseStride);
    const double fu = up != k ? at(up) : fk;
    const double fd = down != k ? at(down) : fk;
    if (fu > fk && fu >= fd) {
      k = up;
      fk = fu;
    } else if (fd > fk) {
      k = down;
      fk = fd;
    } else {
      break;
    }
  }
  // Full scan of the bracket.
  const std::int64_t from = clampk(k - kCoarseStride);
  const std::int64_t to = clampk(k + kCoarseStride);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(to - from + 1));
  std::int64_t best = from;
  for (std::int64_t j = from; j <= to; ++j) {
    values.push_back(at(j));
    if (values.back() > values[static_cast<std::size_t>(best - from)]) best = j;
  }
  double x = lo + static_cast<double>(best) * step;
  if (best > from && best < to) {
    const double fm = values[static_cast<std::size_t>(best - from - 1)];
    const double f0 = values[static_cast<std::size_t>(best - from)];
    const double fp = values[static_cast<std::size_t>(best - from + 1)];
    const double curvature = fm - 2.0 * f0 + fp;
    if (curvature < 0.0) {
      const double offset = std::clamp(0.5 * (fm - fp) / curvature, -0.5, 0.5);
      x += offset * step;
    }
  }
  return x;
}

std::vector<ShockPair> StationaryDraws(const ShockRegime& regime,
                                      std::int64_t samples,
                                      std::uint64_t seed) {
  const double var = regime.StationaryVariance();
  if (var <= 0.0) {
    // Every draw would be zero; one sample gives the same average.
    return {ShockPair{0.0, 0.0}};
  }
  const double sd = std::sqrt(var);
  Rng rng(SplitMix64(seed));
  std::vector<ShockPair> draws(static_cast<std::size_t>(samples));
  for (ShockPair& z : draws) {
    z[0] = sd * StandardNormal(rng);
    z[1] = sd * StandardNormal(rng);
  }
  return draws;
}

ExpectedProfitModel::ExpectedProfitModel(const MarketParams& params,
                                         const ShockRegime& regime,
                                         std::int64_t samples,
                                         std::uint64_t seed)
    : params_(params), draws_(StationaryDraws(regime, samples, seed)) {}

double ExpectedProfitModel::OwnProfit(double own, double rival) const {
  double total = 0.0;
  if (params_.model == MarketModel::kLogit) {
    const double inv_mu = 1.0 / params_.mu;
    const double u0 = params_.a0 * inv_mu;
    for (const ShockPair& z : draws_) {
      const double u1 = (params_.a - own + z[0]) * inv_mu;
      const double u2 = (params_.a - rival + z[1]) * inv_mu;
      total += 1.0 / (1.0 + std::exp(u2 - u1) + std::exp(u0 - u1));
    }
    return (own - params_.c) * total / static_cast<double>(draws_.size());
  }
  for (const ShockPair& z : draws_) {
    total += Step(params_, own, rival, z).profits[0];
  }
  return total / static_cast<double>(draws_.size());
}

double ExpectedProfitModel::SymmetricJointProfit(double price) const {
  double total = 0.0;
  for (const ShockPair& z : draws_) {
    const MarketOutcome out = Step(params_, price, price, z);
    total += out.profits[0] + out.profits[1];
  }
  return 0.5 * total / static_cast<double>(draws_.size());
}

double ExpectedProfitModel::BestResponse(double rival, double guess) const {
  const auto [lo, hi] = SearchDomain(params_);
  return LatticeArgmax([&](double p) { return OwnProfit(p, rival); }, lo, hi,
                       kLatticeStep, guess);
}

double ExpectedProfitModel::MonopolyPrice(double guess) const {
  const auto [lo, hi] = SearchDomain(params_);
  return LatticeArgmax([&](double p) { return SymmetricJointProfit(p); }, lo,
                       hi, kLatticeStep, guess);
}

Benchmarks AnalyticBenchmarks(const MarketParams& params,
                              const ShockRegime& regime) {
  Benchmarks b;
  b.regime = regime;
  switch (params.model) {
    case MarketModel::kLogit:
      throw ModelError("analytic benchmarks are only defined for hotelling and linear markets");
    case MarketModel::kHotelling:
      b.p_nash = params.c + params.theta;
      b.p_mono = params.v - 0.5 * params.theta;
      break;
    case MarketModel::kLinear:
      b.p_nash = params.a * (1.0 - params.d) / (2.0 - params.d);
      b.p_mono = 0.5 * params.a;
      break;
  }
  const ShockPair zero{0.0, 0.0};
  b.pi_nash = Step(params, b.p_nash, b.p_nash, zero).profits[0];
  b.pi_mono = Step(params, b.p_mono, b.p_mono, zero).profits[0];
  return b;
}

Benchmarks NumericBenchmarks(const MarketParams& params,
                             const ShockRegime& regime, std::int64_t samples,
                             std::uint64_t seed,
                             const FixedPointOptions& options) {
  if (samples < kMinSamples) {
    throw ModelError("benchmark Monte Carlo needs at least 10000 samples, got " +
                     std::to_string(samples));
  }
  const ExpectedProfitModel model(params, regime, samples, seed);
  double p = params.p_nash > params.c ? params.p_nash : params.c + 0.5;
  double br = model.BestResponse(p, p);
  double residual = std::abs(br - p);
  int iter = 0;
  while (residual > options.tolerance) {
    if (++iter > options.max_iterations) {
      throw BenchmarkError("Nash fixed point did not converge for " +
                               std::string(MarketName(params.model)) + "/" +
                               std::string(RegimeLabel(regime.name)),
                           p, residual);
    }
    p = 0.5 * (p + br);
    br = model.BestResponse(p, br);
    residual = std::abs(br - p);
  }
  Benchmarks b;
  b.regime = regime;
  b.mc_samples = samples;
  b.mc_seed = seed;
  b.p_nash = p;
  b.p_mono = model.MonopolyPrice(std::max(params.p_mono, p));
  b.pi_nash = model.OwnProfit(b.p_nash, b.p_nash);
  b.pi_mono = model.SymmetricJointProfit(b.p_mono);
  return b;
}

Benchmarks LogitBenchmarksMc(const MarketParams& params,
                             const ShockRegime& regime, std::int64_t samples,
                             std::uint64_t seed,
                             const FixedPointOptions& options) {
  if (params.model != MarketModel::kLogit) {
    throw ModelError("Monte Carlo benchmarks expect the logit market");
  }
  return NumericBenchmarks(params, regime, samples, seed, options);
}

double BestResponse(const MarketParams& params, const ShockRegime& regime,
                    double rival, std::int64_t samples, std::uint64_t seed) {
  const ExpectedProfitModel model(params, regime, samples, seed);
  return model.BestResponse(rival, rival);
}

Benchmarks BenchmarksFor(const MarketParams& params, const ShockRegime& regime,
                         std::int64_t samples, std::uint64_t seed) {
  if (params.model != MarketModel::kLogit) {
    return AnalyticBenchmarks(params, regime);
  }
  if (regime.StationaryVariance() > 0.0) {
    return LogitBenchmarksMc(params, regime, samples, seed);
  }
  Benchmarks b;
  b.regime = regime;
  b.mc_samples = samples;
  b.mc_seed = seed;
  b.p_nash = params.p_nash;
  b.p_mono = params.p_mono;
  const ShockPair zero{0.0, 0.0};
  b.pi_nash = Step(params, b.p_nash, b.p_nash, zero).profits[0];
  b.pi_mono = Step(params, b.p_mono, b.p_mono, zero).profits[0];
  return b;
}

Benchmarks BenchmarkCache::Get(const MarketParams& params, RegimeName regime) {
  const auto key = std::make_pair(params.model, regime);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  Benchmarks b = BenchmarksFor(params, RegimeParams(regime), samples_, seed_);
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.emplace(key, b).first->second;
}

std::map<std::pair<MarketModel, RegimeName>, Benchmarks>
BenchmarkCache::Entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

}  // namespace collusion
