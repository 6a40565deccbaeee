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

#ifndef COLLUSION_NEURAL_H_
#define COLLUSION_NEURAL_H_

// Small dense-network toolkit for the deep pricing agents. Activations are
// column-major batches: one column per sample, one row per feature.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "collusion/hyperparams.h"
#include "collusion/rng.h"

namespace collusion::nn {

using Matrix = Eigen::MatrixXd;
using ParamList = std::vector<Matrix*>;
using ConstParamList = std::vector<const Matrix*>;
using GradList = std::vector<Matrix>;

enum class Activation { kIdentity, kRelu, kTanh };
enum class Mode { kTrain, kEval };

// Fully connected network. Hidden layers share one activation; the last layer
// has its own. Parameters are ordered [W0, b0, W1, b1, ...], biases are
// column vectors.
class Mlp {
 public:
  struct Cache {
    std::vector<Matrix> inputs;  // input of each layer
    std::vector<Matrix> pre;     // pre-activation of each layer
    std::uint64_t version = 0;
  };

  // Weights and biases uniform in +-1/sqrt(fan_in).
  Mlp(std::vector<int> sizes, Activation hidden, Activation output, Rng& rng);
  // All parameters zero.
  Mlp(std::vector<int> sizes, Activation hidden, Activation output);

  // Throws std::invalid_argument if x has the wrong number of rows.
  Matrix Forward(const Matrix& x, Cache* cache = nullptr) const;

  // Gradients of the cached computation. `grads` is resized to match
  // Parameters(); `d_input` may be null. Throws std::logic_error if the
  // parameters changed since the cache was filled.
  void Backward(const Cache& cache, const Matrix& d_out, GradList* grads,
                Matrix* d_input) const;

  // Mutable access invalidates outstanding caches.
  ParamList Parameters();
  ConstParamList Parameters() const;

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  int layers() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }

 private:
  Activation ActivationOf(int layer) const;

  std::vector<int> sizes_;
  Activation hidden_;
  Activation output_;
  std::vector<Matrix> weights_;
  std::vector<Matrix> biases_;
  std::uint64_t version_ = 1;
};

// Per-feature batch normalization with learned scale and shift.
class BatchNorm {
 public:
  struct Cache {
    Matrix normalized;       // x-hat
    Eigen::VectorXd inv_std;  // per feature
    Mode mode = Mode::kTrain;
  };

  BatchNorm(int features, double momentum, double epsilon = 1e-5);

  // Train mode normalizes with batch statistics and folds them into the
  // running estimates (running = momentum * running + (1 - momentum) * batch).
  // Eval mode uses the running estimates.
  Matrix Forward(const Matrix& x, Mode mode, Cache* cache = nullptr);

  // Gradients for [gamma, beta] and the input.
  void Backward(const Cache& cache, const Matrix& d_out, GradList* grads,
                Matrix* d_input) const;

  ParamList Parameters() { return {&gamma_, &beta_}; }
  ConstParamList Parameters() const { return {&gamma_, &beta_}; }

  const Eigen::VectorXd& running_mean() const { return running_mean_; }
  const Eigen::VectorXd& running_var() const { return running_var_; }

 private:
  double momentum_;
  double epsilon_;
  Matrix gamma_;
  Matrix beta_;
  Eigen::VectorXd running_mean_;
  Eigen::VectorXd running_var_;
};

// Q(s, a): state -> batchnorm -> dense+ReLU -> concat(action) -> dense+ReLU
// -> ... -> scalar.
class StateActionCritic {
 public:
  struct Cache {
    BatchNorm::Cache bn;
    Mlp::Cache state;
    Mlp::Cache joint;
  };

  StateActionCritic(int state_dim, int action_dim, int state_hidden,
                    std::vector<int> joint_hidden, double bn_momentum,
                    Rng& rng);

  Matrix Forward(const Matrix& state, const Matrix& action, Mode mode,
                 Cache* cache = nullptr);

  // Parameter gradients in Parameters() order plus input gradients; either
  // input pointer may be null.
  void Backward(const Cache& cache, const Matrix& d_q, GradList* grads,
                Matrix* d_state, Matrix* d_action) const;

  ParamList Parameters();
  ConstParamList Parameters() const;

  Mlp& state_net() { return state_net_; }
  Mlp& joint_net() { return joint_net_; }

 private:
  int state_dim_;
  int action_dim_;
  BatchNorm bn_;
  Mlp state_net_;
  Mlp joint_net_;
};

// Loss and derivative: r^2/2 inside the threshold, linear outside.
std::pair<double, double> Huber(double residual, double threshold = 1.0);

double GlobalNorm(const GradList& grads);
// Rescales all gradients jointly so their L2 norm is at most max_norm.
// Returns the norm before clipping.
double ClipGlobalNorm(GradList& grads, double max_norm = 1.0);

// Bias-corrected adaptive-moment optimizer with optional decoupled weight
// shrinkage.
class Adam {
 public:
  explicit Adam(const AdamParams& params) : params_(params) {}

  void Step(const ParamList& params, const GradList& grads);

  std::int64_t steps() const { return steps_; }
  const AdamParams& params() const { return params_; }

 private:
  AdamParams params_;
  std::int64_t steps_ = 0;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

// target <- tau * online + (1 - tau) * target.
void SoftUpdate(const ParamList& target, const ConstParamList& online,
                double tau);
void HardCopy(const ParamList& target, const ConstParamList& online);

// xi + theta (mu - xi) + sigma * N(0, 1).
double OuStep(double xi, double theta, double mu, double sigma, Rng& rng);

// Fixed-capacity FIFO of transitions with uniform sampling with replacement.
template <typename T>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::int64_t capacity) : capacity_(capacity) {}

  void Push(T item) {
    if (static_cast<std::int64_t>(items_.size()) < capacity_) {
      items_.push_back(std::move(item));
    } else {
      items_[static_cast<std::size_t>(cursor_)] = std::move(item);
    }
    cursor_ = (cursor_ + 1) % capacity_;
  }

  // std::nullopt until at least `batch` items are stored.
  std::optional<std::vector<T>> Sample(int batch, Rng& rng) const {
    if (size() < batch) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(batch));
    for (int i = 0; i < batch; ++i) out.push_back(items_[pick(rng)]);
    return out;
  }

  std::int64_t size() const { return static_cast<std::int64_t>(items_.size()); }
  std::int64_t capacity() const { return capacity_; }
  // Stored items oldest first.
  std::vector<T> Contents() const {
    std::vector<T> out;
    const std::size_t n = items_.size();
    const std::size_t start =
        static_cast<std::int64_t>(n) < capacity_ ? 0 : static_cast<std::size_t>(cursor_);
    for (std::size_t i = 0; i < n; ++i) out.push_back(items_[(start + i) % n]);
    return out;
  }

 private:
  std::int64_t capacity_;
  std::int64_t cursor_ = 0;
  std::vector<T> items_;
};

}  // namespace collusion::nn

#endif  // COLLUSION_NEURAL_H_
