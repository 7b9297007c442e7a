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

#include "rng.hpp"
#include "simplex.hpp"

namespace dpk {

/// Randomizer mapping a floored policy pi to a draw from Dirichlet(k * pi).
/// The draw is unbiased (its mean is pi) and concentrates around pi as k
/// grows. Immutable; share freely across threads, each with its own RngState.
class DirichletMechanism {
 public:
  /// k: concentration parameter, k > 0.
  /// eta: floor the inputs are certified against; k * eta must be positive so
  /// every induced gamma shape is positive.
  /// m: action count.
  DirichletMechanism(double k, double eta, Eigen::Index m);

  double k() const noexcept { return k_; }
  double eta() const noexcept { return eta_; }
  Eigen::Index m() const noexcept { return m_; }

  /// One draw from Dirichlet(k * pi). Gamma variates are generated in log
  /// space and normalized with a max-shift so shapes far below 1 cannot
  /// underflow; any coordinate that still rounds to zero is clamped to
  /// 1e-300 before normalization, keeping log_density evaluable on every
  /// emitted sample. Throws ShapeUnderflow if a variate is not representable
  /// even in log space.
  SimplexVector sample(const RestrictedSimplexVector& pi, RngState& rng) const;

  /// log density of the mechanism at an interior point z:
  ///   log Gamma(k) + sum_i [(k pi_i - 1) log z_i - log Gamma(k pi_i)].
  /// Throws BoundaryPoint when some z_i == 0.
  double log_density(const RestrictedSimplexVector& pi,
                     const SimplexVector& z) const;

 private:
  double k_;
  double eta_;
  Eigen::Index m_;
};

/// Draw from the flat Dirichlet (all shapes 1): the uniform distribution on
/// the simplex. Used by expended teachers; independent of any input policy.
SimplexVector flat_simplex_sample(Eigen::Index m, RngState& rng);

/// Lemma-style concentration radius sqrt(log(1/beta) / (2 (k + 1))): with
/// probability at least 1 - beta a mechanism draw lies within this L2
/// distance of its input. Requires beta in (0, 1); k may be 0 (an expended
/// teacher prices its radius at k = 0).
double concentration_radius(double k, double beta);

}  // namespace dpk
