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

#ifndef COLLUSION_RNG_H_
#define COLLUSION_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace collusion {

using Rng = std::mt19937_64;

// FNV-1a over the bytes of `s`.
constexpr std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the named substream `role` of a run identified by (seed, cell_id).
// Distinct roles give statistically independent generators.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view cell_id,
                                   std::string_view role) {
  return SplitMix64(SplitMix64(seed ^ HashString(cell_id)) ^ HashString(role));
}

inline Rng MakeStream(std::uint64_t seed, std::string_view cell_id,
                      std::string_view role) {
  return Rng(DeriveSeed(seed, cell_id, role));
}

inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double StandardNormal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace collusion

#endif  // COLLUSION_RNG_H_
