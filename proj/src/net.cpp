// Copyright 2026 The dpkick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "net.hpp"

#include <cmath>
#include <fstream>

#include "error.hpp"
#include "privacy.hpp"
#include "simplex.hpp"

namespace dpk {

void MlpGrads::set_zero() {
  for (auto& g : w) g.setZero();
  for (auto& g : b) g.setZero();
}

void MlpGrads::scale(double s) {
  for (auto& g : w) g *= s;
  for (auto& g : b) g *= s;
}

Mlp::Mlp(int in_dim, const std::vector<int>& hidden, int out_dim) {
  int prev = in_dim;
  for (int h : hidden) {
    weights.emplace_back(Eigen::MatrixXd::Zero(h, prev));
    biases.emplace_back(Eigen::VectorXd::Zero(h));
    prev = h;
  }
  weights.emplace_back(Eigen::MatrixXd::Zero(out_dim, prev));
  biases.emplace_back(Eigen::VectorXd::Zero(out_dim));
}

int Mlp::in_dim() const { return static_cast<int>(weights.front().cols()); }
int Mlp::out_dim() const { return static_cast<int>(weights.back().rows()); }

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x, Cache* cache) const {
  if (x.size() != weights.front().cols()) {
    fail(ErrorCode::kShapeMismatch,
         "input dimension " + std::to_string(x.size()) + ", expected " +
             std::to_string(weights.front().cols()));
  }
  if (cache) {
    cache->inputs.clear();
    cache->inputs.reserve(weights.size());
  }
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (cache) cache->inputs.push_back(h);
    h = weights[l] * h + biases[l];
    if (l + 1 < weights.size()) h = h.cwiseMax(0.0);
  }
  return h;
}

void Mlp::backward(const Cache& cache, const Eigen::VectorXd& dout,
                   MlpGrads& grads) const {
  Eigen::VectorXd delta = dout;
  for (std::size_t l = weights.size(); l-- > 0;) {
    const Eigen::VectorXd& input = cache.inputs[l];
    grads.w[l].noalias() += delta * input.transpose();
    grads.b[l] += delta;
    if (l > 0) {
      delta = weights[l].transpose() * delta;
      // Rectifier gate: the cached layer input is the post-activation, which
      // is positive exactly where the pre-activation was.
      for (Eigen::Index i = 0; i < delta.size(); ++i) {
        if (input[i] <= 0.0) delta[i] = 0.0;
      }
    }
  }
}

void Mlp::init_fan_in_uniform(RngState& rng) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const double limit =
        std::sqrt(3.0 / static_cast<double>(weights[l].cols()));
    for (Eigen::Index r = 0; r < weights[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < weights[l].cols(); ++c) {
        weights[l](r, c) = (2.0 * rng.next_double() - 1.0) * limit;
      }
    }
    biases[l].setZero();
  }
}

MlpGrads Mlp::zero_grads() const {
  MlpGrads g;
  for (const auto& w : weights) {
    g.w.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  }
  for (const auto& b : biases) {
    g.b.emplace_back(Eigen::VectorXd::Zero(b.size()));
  }
  return g;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& w : weights) n += static_cast<std::size_t>(w.size());
  for (const auto& b : biases) n += static_cast<std::size_t>(b.size());
  return n;
}

Eigen::VectorXd Mlp::flatten() const {
  Eigen::VectorXd theta(parameter_count());
  Eigen::Index at = 0;
  for (const auto& w : weights) {
    theta.segment(at, w.size()) =
        Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    at += w.size();
  }
  for (const auto& b : biases) {
    theta.segment(at, b.size()) = b;
    at += b.size();
  }
  return theta;
}

void Mlp::unflatten(const Eigen::VectorXd& theta) {
  Eigen::Index at = 0;
  for (auto& w : weights) {
    Eigen::Map<Eigen::VectorXd>(w.data(), w.size()) =
        theta.segment(at, w.size());
    at += w.size();
  }
  for (auto& b : biases) {
    b = theta.segment(at, b.size());
    at += b.size();
  }
}

PolicyNet::PolicyNet(int obs_dim, const std::vector<int>& hidden, int m,
                     double eta)
    : mlp(obs_dim, hidden, m), m_(m), eta_(eta) {
  if (m < 2) fail(ErrorCode::kDimensionMismatch, "need m >= 2 actions");
  if (eta < 0.0 || eta * m > 1.0) {
    fail(ErrorCode::kBadEta, "policy floor eta must satisfy m eta <= 1");
  }
}

PolicyOutput PolicyNet::forward(const Eigen::VectorXd& obs,
                                Mlp::Cache* cache) const {
  PolicyOutput out;
  out.logits = mlp.forward(obs, cache);
  const double shift = out.logits.maxCoeff();
  out.softmax = (out.logits.array() - shift).exp();
  out.softmax /= out.softmax.sum();
  out.pi = (1.0 - m_ * eta_) * out.softmax.array() + eta_;
  return out;
}

void PolicyNet::backward(const Mlp::Cache& cache, const PolicyOutput& out,
                         const Eigen::VectorXd& dpi, MlpGrads& grads) const {
  // Chain through pi = (1 - m eta) s + eta and the softmax Jacobian
  // diag(s) - s s^T.
  const double scale = 1.0 - m_ * eta_;
  const double mix = out.softmax.dot(dpi);
  const Eigen::VectorXd dlogits =
      scale * (out.softmax.array() * (dpi.array() - mix)).matrix();
  mlp.backward(cache, dlogits, grads);
}

double PolicyNet::lipschitz_upper_bound() const {
  return dpk::lipschitz_upper_bound(mlp.weights, 1.0 - m_ * eta_);
}

ValueNet::ValueNet(int obs_dim, const std::vector<int>& hidden)
    : mlp(obs_dim, hidden, 1) {}

double ValueNet::forward(const Eigen::VectorXd& obs, Mlp::Cache* cache) const {
  return mlp.forward(obs, cache)[0];
}

void ValueNet::backward(const Mlp::Cache& cache, double dvalue,
                        MlpGrads& grads) const {
  Eigen::VectorXd dout(1);
  dout[0] = dvalue;
  mlp.backward(cache, dout, grads);
}

AdamOptimizer::AdamOptimizer(double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamOptimizer::step(Mlp& net, const MlpGrads& grads) {
  if (!initialized_) {
    m_ = net.zero_grads();
    v_ = net.zero_grads();
    initialized_ = true;
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    m_.w[l] = beta1_ * m_.w[l] + (1.0 - beta1_) * grads.w[l];
    v_.w[l] = beta2_ * v_.w[l] +
              (1.0 - beta2_) * grads.w[l].array().square().matrix();
    net.weights[l].array() -=
        lr_ * (m_.w[l].array() / bc1) /
        ((v_.w[l].array() / bc2).sqrt() + eps_);
    m_.b[l] = beta1_ * m_.b[l] + (1.0 - beta1_) * grads.b[l];
    v_.b[l] = beta2_ * v_.b[l] +
              (1.0 - beta2_) * grads.b[l].array().square().matrix();
    net.biases[l].array() -=
        lr_ * (m_.b[l].array() / bc1) /
        ((v_.b[l].array() / bc2).sqrt() + eps_);
  }
}

namespace {

nlohmann::json mlp_to_json(const Mlp& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    const auto& w = net.weights[l];
    std::vector<double> flat(static_cast<std::size_t>(w.size()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        flat[static_cast<std::size_t>(r * w.cols() + c)] = w(r, c);
      }
    }
    layers.push_back({{"rows", w.rows()},
                      {"cols", w.cols()},
                      {"w", flat},
                      {"b", std::vector<double>(net.biases[l].data(),
                                                net.biases[l].data() +
                                                    net.biases[l].size())}});
  }
  return layers;
}

Mlp mlp_from_json(const nlohmann::json& layers) {
  Mlp net;
  for (const auto& layer : layers) {
    const auto rows = layer.at("rows").get<Eigen::Index>();
    const auto cols = layer.at("cols").get<Eigen::Index>();
    const auto flat = layer.at("w").get<std::vector<double>>();
    const auto bias = layer.at("b").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(rows * cols) ||
        bias.size() != static_cast<std::size_t>(rows)) {
      fail(ErrorCode::kShapeMismatch, "tensor size disagrees with manifest");
    }
    Eigen::MatrixXd w(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        w(r, c) = flat[static_cast<std::size_t>(r * cols + c)];
      }
    }
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::Map<const Eigen::VectorXd>(
        bias.data(), static_cast<Eigen::Index>(bias.size())));
  }
  if (net.weights.empty()) {
    fail(ErrorCode::kShapeMismatch, "checkpoint has no layers");
  }
  for (std::size_t l = 1; l < net.weights.size(); ++l) {
    if (net.weights[l].cols() != net.weights[l - 1].rows()) {
      fail(ErrorCode::kShapeMismatch, "layer shapes do not chain");
    }
  }
  return net;
}

}  // namespace

nlohmann::json Checkpoint::to_json() const {
  return nlohmann::json{
      {"format", "dpkick-checkpoint-v1"},
      {"obs_dim", policy.mlp.in_dim()},
      {"actions", policy.action_count()},
      {"eta", policy.eta()},
      {"policy", mlp_to_json(policy.mlp)},
      {"value", mlp_to_json(value.mlp)},
  };
}

Checkpoint Checkpoint::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "dpkick-checkpoint-v1") {
    fail(ErrorCode::kMissingCheckpoint, "unrecognized checkpoint format");
  }
  Checkpoint ckpt;
  Mlp pol = mlp_from_json(j.at("policy"));
  const int m = j.at("actions").get<int>();
  const double eta = j.at("eta").get<double>();
  if (pol.out_dim() != m) {
    fail(ErrorCode::kShapeMismatch, "policy head size disagrees with actions");
  }
  ckpt.policy = PolicyNet(pol.in_dim(), {}, m, eta);
  ckpt.policy.mlp = std::move(pol);
  Mlp val = mlp_from_json(j.at("value"));
  if (val.out_dim() != 1) {
    fail(ErrorCode::kShapeMismatch, "value head must be scalar");
  }
  ckpt.value = ValueNet(val.in_dim(), {});
  ckpt.value.mlp = std::move(val);
  return ckpt;
}

void Checkpoint::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path);
  out << to_json().dump(2) << '\n';
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kMissingCheckpoint, "cannot read " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

}  // namespace dpk
