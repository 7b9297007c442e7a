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

#include "dirichlet.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "gamma_fn.hpp"

namespace dpk {

namespace {
constexpr double kClamp = 1e-300;

SimplexVector normalize_log_gammas(Eigen::VectorXd& log_g) {
  const double shift = log_g.maxCoeff();
  Eigen::VectorXd w(log_g.size());
  for (Eigen::Index i = 0; i < log_g.size(); ++i) {
    double v = std::exp(log_g[i] - shift);
    if (v == 0.0) v = kClamp;
    w[i] = v;
  }
  // Renormalize so the emitted vector passes simplex validation exactly.
  const double total = w.sum();
  w /= total;
  return SimplexVector(std::move(w));
}
}  // namespace

DirichletMechanism::DirichletMechanism(double k, double eta, Eigen::Index m)
    : k_(k), eta_(eta), m_(m) {
  if (!(k > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "k must be positive");
  }
  if (!(k * eta > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "k * eta must be positive so all gamma shapes are positive");
  }
  if (m < 2) {
    fail(ErrorCode::kDimensionMismatch, "need m >= 2");
  }
}

SimplexVector DirichletMechanism::sample(const RestrictedSimplexVector& pi,
                                         RngState& rng) const {
  if (pi.dimension() != m_) {
    fail(ErrorCode::kDimensionMismatch, "policy dimension mismatch");
  }
  if (pi.eta() + kSimplexFloorTolerance < eta_) {
    fail(ErrorCode::kFloorViolation,
         "input certified at eta " + std::to_string(pi.eta()) +
             " below mechanism floor " + std::to_string(eta_));
  }
  Eigen::VectorXd log_g(m_);
  for (Eigen::Index i = 0; i < m_; ++i) {
    log_g[i] = rng.next_log_gamma(k_ * pi.entries()[i]);
  }
  return normalize_log_gammas(log_g);
}

double DirichletMechanism::log_density(const RestrictedSimplexVector& pi,
                                       const SimplexVector& z) const {
  if (pi.dimension() != m_ || z.dimension() != m_) {
    fail(ErrorCode::kDimensionMismatch, "dimension mismatch");
  }
  double acc = log_gamma(k_);
  for (Eigen::Index i = 0; i < m_; ++i) {
    if (z[i] <= 0.0) {
      fail(ErrorCode::kBoundaryPoint,
           "z has a zero entry at index " + std::to_string(i));
    }
    const double shape = k_ * pi.entries()[i];
    acc += (shape - 1.0) * std::log(z[i]) - log_gamma(shape);
  }
  return acc;
}

SimplexVector flat_simplex_sample(Eigen::Index m, RngState& rng) {
  Eigen::VectorXd log_g(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    log_g[i] = rng.next_log_gamma(1.0);
  }
  return normalize_log_gammas(log_g);
}

double concentration_radius(double k, double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    fail(ErrorCode::kBadBeta, "beta must lie in (0, 1)");
  }
  if (k < 0.0) {
    fail(ErrorCode::kInvalidArgument, "k must be non-negative");
  }
  return std::sqrt(std::log(1.0 / beta) / (2.0 * (k + 1.0)));
}

}  // namespace dpk
