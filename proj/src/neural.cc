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

#include "collusion/neural.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace collusion::nn {
namespace {

Matrix Apply(Activation act, const Matrix& z) {
  switch (act) {
    case Activation::kIdentity:
      return z;
    case Activation::kRelu:
      return z.cwiseMax(0.0);
    case Activation::kTanh:
      return z.array().tanh().matrix();
  }
  return z;
}

// d act(z) / dz evaluated elementwise and multiplied into `grad`.
void ChainActivation(Activation act, const Matrix& z, Matrix& grad) {
  switch (act) {
    case Activation::kIdentity:
      return;
    case Activation::kRelu:
      grad.array() *= (z.array() > 0.0).cast<double>();
      return;
    case Activation::kTanh:
      grad.array() *= 1.0 - z.array().tanh().square();
      return;
  }
}

}  // namespace

Mlp::Mlp(std::vector<int> sizes, Activation hidden, Activation output)
    : sizes_(std::move(sizes)), hidden_(hidden), output_(output) {
  if (sizes_.size() < 2) throw std::invalid_argument("mlp needs at least two layer sizes");
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    weights_.push_back(Matrix::Zero(sizes_[l + 1], sizes_[l]));
    biases_.push_back(Matrix::Zero(sizes_[l + 1], 1));
  }
}

Mlp::Mlp(std::vector<int> sizes, Activation hidden, Activation output, Rng& rng)
    : Mlp(std::move(sizes), hidden, output) {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[l]));
    std::uniform_real_distribution<double> init(-bound, bound);
    for (Eigen::Index j = 0; j < weights_[l].cols(); ++j) {
      for (Eigen::Index i = 0; i < weights_[l].rows(); ++i) weights_[l](i, j) = init(rng);
    }
    for (Eigen::Index i = 0; i < biases_[l].rows(); ++i) biases_[l](i, 0) = init(rng);
  }
}

Activation Mlp::ActivationOf(int layer) const {
  return layer + 1 == layers() ? output_ : hidden_;
}

Matrix Mlp::Forward(const Matrix& x, Cache* cache) const {
  if (x.rows() != input_size()) {
    throw std::invalid_argument("mlp input has " + std::to_string(x.rows()) +
                                " rows, expected " + std::to_string(input_size()));
  }
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
    cache->version = version_;
  }
  Matrix a = x;
  for (int l = 0; l < layers(); ++l) {
    Matrix z = weights_[l] * a;
    z.colwise() += biases_[l].col(0);
    if (cache) {
      cache->inputs.push_back(std::move(a));
      a = Apply(ActivationOf(l), z);
      cache->pre.push_back(std::move(z));
    } else {
      a = Apply(ActivationOf(l), z);
    }
  }
  return a;
}

void Mlp::Backward(const Cache& cache, const Matrix& d_out, GradList* grads,
                   Matrix* d_input) const {
  if (cache.version != version_ || static_cast<int>(cache.pre.size()) != layers()) {
    throw std::logic_error("mlp backward called with a stale cache");
  }
  if (grads) grads->resize(2 * weights_.size());
  Matrix delta = d_out;
  for (int l = layers() - 1; l >= 0; --l) {
    ChainActivation(ActivationOf(l), cache.pre[l], delta);
    if (grads) {
      (*grads)[2 * l] = delta * cache.inputs[l].transpose();
      (*grads)[2 * l + 1] = delta.rowwise().sum();
    }
    if (l > 0 || d_input) {
      Matrix back = weights_[l].transpose() * delta;
      delta = std::move(back);
    }
  }
  if (d_input) *d_input = std::move(delta);
}

ParamList Mlp::Parameters() {
  ++version_;
  ParamList out;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.push_back(&weights_[l]);
    out.push_back(&biases_[l]);
  }
  return out;
}

ConstParamList Mlp::Parameters() const {
  ConstParamList out;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.push_back(&weights_[l]);
    out.push_back(&biases_[l]);
  }
  return out;
}

BatchNorm::BatchNorm(int features, double momentum, double epsilon)
    : momentum_(momentum),
      epsilon_(epsilon),
      gamma_(Matrix::Ones(features, 1)),
      beta_(Matrix::Zero(features, 1)),
      running_mean_(Eigen::VectorXd::Zero(features)),
      running_var_(Eigen::VectorXd::Ones(features)) {}

Matrix BatchNorm::Forward(const Matrix& x, Mode mode, Cache* cache) {
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
  if (mode == Mode::kTrain) {
    const double n = static_cast<double>(x.cols());
    mean = x.rowwise().mean();
    var = (x.colwise() - mean).array().square().rowwise().sum().matrix() / n;
    running_mean_ = momentum_ * running_mean_ + (1.0 - momentum_) * mean;
    running_var_ = momentum_ * running_var_ + (1.0 - momentum_) * var;
  } else {
    mean = running_mean_;
    var = running_var_;
  }
  const Eigen::VectorXd inv_std = (var.array() + epsilon_).rsqrt().matrix();
  Matrix normalized = (x.colwise() - mean).array().colwise() * inv_std.array();
  Matrix y = (normalized.array().colwise() * gamma_.col(0).array()).matrix();
  y.colwise() += beta_.col(0);
  if (cache) {
    cache->normalized = std::move(normalized);
    cache->inv_std = inv_std;
    cache->mode = mode;
  }
  return y;
}

void BatchNorm::Backward(const Cache& cache, const Matrix& d_out,
                         GradList* grads, Matrix* d_input) const {
  if (grads) {
    grads->resize(2);
    (*grads)[0] = (d_out.array() * cache.normalized.array()).rowwise().sum().matrix();
    (*grads)[1] = d_out.rowwise().sum();
  }
  if (!d_input) return;
  const Matrix d_norm = (d_out.array().colwise() * gamma_.col(0).array()).matrix();
  if (cache.mode == Mode::kEval) {
    *d_input = (d_norm.array().colwise() * cache.inv_std.array()).matrix();
    return;
  }
  const double n = static_cast<double>(d_out.cols());
  const Eigen::VectorXd sum_d = d_norm.rowwise().sum();
  const Eigen::VectorXd sum_dx =
      (d_norm.array() * cache.normalized.array()).rowwise().sum().matrix();
  Matrix dx = (n * d_norm.array()).matrix();
  dx.colwise() -= sum_d;
  dx -= (cache.normalized.array().colwise() * sum_dx.array()).matrix();
  *d_input = (dx.array().colwise() * (cache.inv_std.array() / n)).matrix();
}

StateActionCritic::StateActionCritic(int state_dim, int action_dim,
                                     int state_hidden,
                                     std::vector<int> joint_hidden,
                                     double bn_momentum, Rng& rng)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      bn_(state_dim, bn_momentum),
      state_net_({state_dim, state_hidden}, Activation::kRelu, Activation::kRelu, rng),
      joint_net_(
          [&] {
            std::vector<int> sizes{state_hidden + action_dim};
            sizes.insert(sizes.end(), joint_hidden.begin(), joint_hidden.end());
            sizes.push_back(1);
            return sizes;
          }(),
          Activation::kRelu, Activation::kIdentity, rng) {}

Matrix StateActionCritic::Forward(const Matrix& state, const Matrix& action,
                                  Mode mode, Cache* cache) {
  if (state.rows() != state_dim_ || action.rows() != action_dim_ ||
      state.cols() != action.cols()) {
    throw std::invalid_argument("critic input shape mismatch");
  }
  const Matrix s = bn_.Forward(state, mode, cache ? &cache->bn : nullptr);
  const Matrix h = state_net_.Forward(s, cache ? &cache->state : nullptr);
  Matrix joint(h.rows() + action.rows(), h.cols());
  joint.topRows(h.rows()) = h;
  joint.bottomRows(action.rows()) = action;
  return joint_net_.Forward(joint, cache ? &cache->joint : nullptr);
}

void StateActionCritic::Backward(const Cache& cache, const Matrix& d_q,
                                 GradList* grads, Matrix* d_state,
                                 Matrix* d_action) const {
  Matrix d_joint;
  GradList joint_grads;
  joint_net_.Backward(cache.joint, d_q, grads ? &joint_grads : nullptr, &d_joint);
  const Eigen::Index hidden = d_joint.rows() - action_dim_;
  if (d_action) *d_action = d_joint.bottomRows(action_dim_);
  if (!grads && !d_state) return;
  const Matrix d_h = d_joint.topRows(hidden);
  GradList state_grads;
  Matrix d_s;
  state_net_.Backward(cache.state, d_h, grads ? &state_grads : nullptr, &d_s);
  GradList bn_grads;
  bn_.Backward(cache.bn, d_s, grads ? &bn_grads : nullptr, d_state);
  if (grads) {
    grads->clear();
    for (auto* list : {&bn_grads, &state_grads, &joint_grads}) {
      for (Matrix& g : *list) grads->push_back(std::move(g));
    }
  }
}

ParamList StateActionCritic::Parameters() {
  ParamList out = bn_.Parameters();
  for (Matrix* p : state_net_.Parameters()) out.push_back(p);
  for (Matrix* p : joint_net_.Parameters()) out.push_back(p);
  return out;
}

ConstParamList StateActionCritic::Parameters() const {
  ConstParamList out = bn_.Parameters();
  for (const Matrix* p : state_net_.Parameters()) out.push_back(p);
  for (const Matrix* p : joint_net_.Parameters()) out.push_back(p);
  return out;
}

std::pair<double, double> Huber(double residual, double threshold) {
  const double abs_r = std::abs(residual);
  if (abs_r <= threshold) return {0.5 * residual * residual, residual};
  return {threshold * (abs_r - 0.5 * threshold),
          residual > 0.0 ? threshold : -threshold};
}

double GlobalNorm(const GradList& grads) {
  double sq = 0.0;
  for (const Matrix& g : grads) sq += g.squaredNorm();
  return std::sqrt(sq);
}

double ClipGlobalNorm(GradList& grads, double max_norm) {
  const double norm = GlobalNorm(grads);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (Matrix& g : grads) g *= scale;
  }
  return norm;
}

void Adam::Step(const ParamList& params, const GradList& grads) {
  if (params.size() != grads.size()) {
    throw std::invalid_argument("adam: parameter and gradient counts differ");
  }
  if (m_.empty()) {
    for (const Matrix* p : params) {
      m_.push_back(Matrix::Zero(p->rows(), p->cols()));
      v_.push_back(Matrix::Zero(p->rows(), p->cols()));
    }
  }
  ++steps_;
  const double b1 = params_.beta1;
  const double b2 = params_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix& p = *params[i];
    const Matrix& g = grads[i];
    m_[i] = b1 * m_[i] + (1.0 - b1) * g;
    v_[i] = b2 * v_[i] + (1.0 - b2) * g.cwiseProduct(g);
    const auto step = (m_[i].array() / correction1) /
                      ((v_[i].array() / correction2).sqrt() + params_.epsilon);
    if (params_.weight_decay != 0.0) {
      p.array() -= params_.lr * (step + params_.weight_decay * p.array());
    } else {
      p.array() -= params_.lr * step;
    }
  }
}

void SoftUpdate(const ParamList& target, const ConstParamList& online,
                double tau) {
  for (std::size_t i = 0; i < target.size(); ++i) {
    *target[i] = tau * *online[i] + (1.0 - tau) * *target[i];
  }
}

void HardCopy(const ParamList& target, const ConstParamList& online) {
  for (std::size_t i = 0; i < target.size(); ++i) *target[i] = *online[i];
}

double OuStep(double xi, double theta, double mu, double sigma, Rng& rng) {
  return xi + theta * (mu - xi) + sigma * StandardNormal(rng);
}

}  // namespace collusion::nn
