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

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include <json.hpp>

#include "rng.hpp"

namespace dpk {

struct MlpGrads {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;

  void set_zero();
  void scale(double s);
};

/// Plain fully-connected stack with rectifier hidden activations and a linear
/// output layer. Forward passes cache per-layer activations so the exact
/// reverse-mode gradients can be accumulated sample by sample.
class Mlp {
 public:
  Mlp() = default;
  Mlp(int in_dim, const std::vector<int>& hidden, int out_dim);

  struct Cache {
    std::vector<Eigen::VectorXd> inputs;  // input to each layer
  };

  Eigen::VectorXd forward(const Eigen::VectorXd& x, Cache* cache) const;
  /// Accumulates d(loss)/d(params) into grads given d(loss)/d(output).
  void backward(const Cache& cache, const Eigen::VectorXd& dout,
                MlpGrads& grads) const;

  void init_fan_in_uniform(RngState& rng);
  MlpGrads zero_grads() const;

  int in_dim() const;
  int out_dim() const;
  std::size_t parameter_count() const;
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& theta);

  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

struct PolicyOutput {
  Eigen::VectorXd logits;
  Eigen::VectorXd softmax;
  Eigen::VectorXd pi;  // (1 - m eta) softmax + eta, entrywise >= eta
};

/// Policy network: MLP into an eta-floored softmax head,
///   pi = (1 - m eta) softmax(logits) + eta,
/// which maps every observation into the eta-restricted simplex as long as
/// eta <= 1/m. Softmax is evaluated with max-subtraction so extreme logits
/// stay finite.
class PolicyNet {
 public:
  PolicyNet() = default;
  PolicyNet(int obs_dim, const std::vector<int>& hidden, int m, double eta);

  PolicyOutput forward(const Eigen::VectorXd& obs,
                       Mlp::Cache* cache = nullptr) const;
  /// Accumulates parameter gradients given d(loss)/d(pi).
  void backward(const Mlp::Cache& cache, const PolicyOutput& out,
                const Eigen::VectorXd& dpi, MlpGrads& grads) const;

  int action_count() const noexcept { return m_; }
  double eta() const noexcept { return eta_; }
  /// Lipschitz upper bound of obs -> pi: spectral-norm product of the layers
  /// times the head contraction (1 - m eta) times the softmax bound 1.
  double lipschitz_upper_bound() const;

  Mlp mlp;

 private:
  int m_ = 0;
  double eta_ = 0.0;
};

class ValueNet {
 public:
  ValueNet() = default;
  ValueNet(int obs_dim, const std::vector<int>& hidden);

  double forward(const Eigen::VectorXd& obs,
                 Mlp::Cache* cache = nullptr) const;
  void backward(const Mlp::Cache& cache, double dvalue, MlpGrads& grads) const;

  Mlp mlp;
};

/// Adam from its published update equations.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(double lr, double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8);

  void step(Mlp& net, const MlpGrads& grads);

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  MlpGrads m_, v_;
  bool initialized_ = false;
};

/// Checkpoint of a policy/value pair as JSON tensors with a shape manifest.
struct Checkpoint {
  PolicyNet policy;
  ValueNet value;

  nlohmann::json to_json() const;
  static Checkpoint from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);
};

}  // namespace dpk
