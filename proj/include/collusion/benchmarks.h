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

#ifndef COLLUSION_BENCHMARKS_H_
#define COLLUSION_BENCHMARKS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "collusion/market.h"
#include "collusion/shocks.h"

namespace collusion {

// Static Nash / monopoly reference point of one (market, regime) pair.
// Profits are expected per-firm per-period values.
struct Benchmarks {
  double p_nash = 0.0;
  double p_mono = 0.0;
  double pi_nash = 0.0;
  double pi_mono = 0.0;
  ShockRegime regime;
  std::int64_t mc_samples = 0;
  std::uint64_t mc_seed = 0;
};

inline constexpr double kLatticeStep = 1e-3;
inline constexpr std::int64_t kDefaultBenchmarkSamples = 100'000;

struct FixedPointOptions {
  double tolerance = 1e-4;
  int max_iterations = 200;
};

// Interval of prices searched by the numerical solvers. Hotelling is
// restricted to prices at which the marginal consumer still buys, the
// domain on which the full-coverage demand is valid.
std::pair<double, double> SearchDomain(const MarketParams& params);

// Maximizer of `f` over the lattice lo + k*step inside [lo, hi], assuming f
// is unimodal. A coarse hill climb brackets the peak, every lattice point in
// the bracket is scanned, and an interior peak is refined by a parabola
// through its two neighbours.
double LatticeArgmax(const std::function<double(double)>& f, double lo,
                     double hi, double step, double guess);

// i.i.d. draws of (z1, z2) from the stationary AR(1) law, N(0, var) per
// firm. A zero-variance regime yields the single draw (0, 0).
std::vector<ShockPair> StationaryDraws(const ShockRegime& regime,
                                      std::int64_t samples,
                                      std::uint64_t seed);

// Expected profits over i.i.d. draws from the stationary AR(1) law of each
// firm's shock. The draws are fixed at construction (common random numbers).
class ExpectedProfitModel {
 public:
  ExpectedProfitModel(const MarketParams& params, const ShockRegime& regime,
                      std::int64_t samples, std::uint64_t seed);

  // E_z[pi_0(own, rival, z)].
  double OwnProfit(double own, double rival) const;
  // Per-firm expected profit when both firms charge `price`.
  double SymmetricJointProfit(double price) const;

  double BestResponse(double rival, double guess) const;
  double MonopolyPrice(double guess) const;

  const MarketParams& params() const { return params_; }

 private:
  MarketParams params_;
  std::vector<ShockPair> draws_;
};

// Closed forms for Hotelling (p_N = c + theta, p_M = v - theta/2) and Linear
// (p_N = a(1-d)/(2-d), p_M = a/2). Identical across shock regimes.
// Throws ModelError for the logit model.
Benchmarks AnalyticBenchmarks(const MarketParams& params,
                              const ShockRegime& regime);

// Symmetric fixed point of the expected-profit best response (damped update
// p <- (p + BR(p)) / 2) and the symmetric joint-profit maximizer. Works for
// any model; the logit model is the one that needs it. Throws BenchmarkError
// on non-convergence and ModelError if samples < 10^4.
Benchmarks NumericBenchmarks(const MarketParams& params,
                             const ShockRegime& regime, std::int64_t samples,
                             std::uint64_t seed,
                             const FixedPointOptions& options = {});

// As NumericBenchmarks, restricted to the logit model.
Benchmarks LogitBenchmarksMc(const MarketParams& params,
                             const ShockRegime& regime, std::int64_t samples,
                             std::uint64_t seed,
                             const FixedPointOptions& options = {});

// Lattice best response against a fixed rival price.
double BestResponse(const MarketParams& params, const ShockRegime& regime,
                    double rival, std::int64_t samples, std::uint64_t seed);

// Benchmarks used to score a run: analytic for Hotelling/Linear, the
// hard-coded grid prices for no-shock logit, Monte Carlo otherwise.
Benchmarks BenchmarksFor(const MarketParams& params, const ShockRegime& regime,
                         std::int64_t samples, std::uint64_t seed);

// Memoized BenchmarksFor keyed by (market, regime). Safe for concurrent use.
class BenchmarkCache {
 public:
  BenchmarkCache(std::int64_t samples, std::uint64_t seed)
      : samples_(samples), seed_(seed) {}

  Benchmarks Get(const MarketParams& params, RegimeName regime);
  std::map<std::pair<MarketModel, RegimeName>, Benchmarks> Entries() const;

 private:
  std::int64_t samples_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  std::map<std::pair<MarketModel, RegimeName>, Benchmarks> entries_;
};

}  // namespace collusion

#endif  // COLLUSION_BENCHMARKS_H_
