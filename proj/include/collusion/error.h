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

#ifndef COLLUSION_ERROR_H_
#define COLLUSION_ERROR_H_

#include <stdexcept>
#include <string>

namespace collusion {

// Invalid model parameters or benchmark inputs (e.g. p_mono < p_nash, d^2 = 1,
// an operation called for the wrong demand model).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad configuration: unknown keys, unknown names, out-of-range values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Benchmark metric undefined because pi_M == pi_N (or p_M == p_N).
class DegenerateBenchmarkError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The Nash fixed-point iteration did not converge.
class BenchmarkError : public std::runtime_error {
 public:
  BenchmarkError(const std::string& what, double last_iterate, double residual)
      : std::runtime_error(what),
        last_iterate_(last_iterate),
        residual_(residual) {}

  double last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  double last_iterate_;
  double residual_;
};

}  // namespace collusion

#endif  // COLLUSION_ERROR_H_
