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
#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace dpk {

/// Everything needed to price the privacy of one mechanism query.
struct MechanismConfig {
  double k = 1.0;     // Dirichlet concentration
  double eta = 0.0;   // floor of the policy head feeding the mechanism
  double tau = 0.0;   // interior margin defining the good output region
  double b = 0.0;     // adjacency radius in observation space
  double lipschitz = 0.0;  // Lipschitz bound of the map observation -> policy
  Eigen::Index m = 2;      // action count

  /// Throws on violated invariants: k > 0, eta in (0, 1/m], tau in (0, 1/m],
  /// b >= 0, lipschitz >= 0, m >= 2.
  void check() const;
};

/// An (epsilon, delta) certificate. delta_half_width is the Chebyshev
/// half-width of the delta estimate (0 when delta was computed exactly).
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double delta_half_width = 0.0;
  std::uint64_t n_samples = 0;
};

struct DeltaEstimate {
  double delta = 0.0;
  double half_width = 0.0;
  std::uint64_t n_samples = 0;
};

/// Closed-form epsilon:
///   sqrt(m) L b k log(1/tau)
///   + (m-1) log Gamma(k eta) + log Gamma(k (1-(m-1) eta)) - m log Gamma(k/m)
/// floored at 0 (a negative value has no meaning as a privacy level and the
/// guarantee survives the flooring).
/// Throws DegenerateConfig when k (1-(m-1) eta) <= 0.
double epsilon_exact(const MechanismConfig& cfg);

/// Monte-Carlo delta: the empirical fraction of mechanism draws, at the
/// vertex input (eta, ..., eta, 1-(m-1) eta), that fall outside the
/// tau-restricted simplex. Edge cases are exact and skip sampling:
/// tau <= 0 gives 0, m tau > 1 gives 1 (the restricted simplex is empty).
///
/// The draw budget may be split across `worker_count` child streams; the
/// result is a deterministic function of (rng seed, worker_count).
DeltaEstimate delta_mc(double k, double eta, double tau, Eigen::Index m,
                       std::uint64_t n_samples, double confidence,
                       RngState& rng, int worker_count = 1);

/// Brute-force delta for m = 2 by numerical integration of the Beta density
/// induced on the first coordinate: 1 - P(tau <= X <= 1-tau) for
/// X ~ Beta(k eta, k (1-eta)). Independent of the sampling path.
double delta_beta_exact(double k, double eta, double tau);

/// Smallest N with 1/(4 N t^2) <= 1 - confidence (Bernoulli variance bounded
/// by 1/4 in the Chebyshev bound for the mean of N draws).
std::uint64_t required_samples(double t, double confidence);

/// Chebyshev half-width achieved by n samples at the given confidence.
double chebyshev_half_width(std::uint64_t n, double confidence);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& w);

/// Upper bound on the Lipschitz constant of a feed-forward network with
/// 1-Lipschitz activations: the product of the layers' spectral norms times
/// the output head's contraction factor (pass 1 for an identity head,
/// 1 - m eta for a floored softmax head whose softmax is bounded by 1).
double lipschitz_upper_bound(const std::vector<Eigen::MatrixXd>& weights,
                             double head_factor);

/// Bundles epsilon_exact with a delta estimate sized by required_samples.
/// For m = 2 the deterministic Beta path is used instead of sampling.
PrivacyParams price(const MechanismConfig& cfg, double delta_accuracy,
                    double confidence, RngState& rng, int worker_count = 1);

}  // namespace dpk
