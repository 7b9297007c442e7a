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

#include "privacy.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "dirichlet.hpp"
#include "error.hpp"
#include "gamma_fn.hpp"
#include "simplex.hpp"

namespace dpk {

namespace {

// Adaptive Simpson quadrature; f must be smooth on [a, b].
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double m, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, tol / 2.0,
                          depth - 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, tol / 2.0,
                          depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  return adaptive_simpson(f, a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b),
                          tol, 48);
}

}  // namespace

void MechanismConfig::check() const {
  if (m < 2) fail(ErrorCode::kDimensionMismatch, "need m >= 2");
  const double md = static_cast<double>(m);
  if (!(k > 0.0)) fail(ErrorCode::kInvalidArgument, "k must be positive");
  if (!(eta > 0.0) || md * eta > 1.0 + kSimplexFloorTolerance) {
    fail(ErrorCode::kBadEta, "eta must lie in (0, 1/m]");
  }
  if (!(tau > 0.0) || md * tau > 1.0 + kSimplexFloorTolerance) {
    fail(ErrorCode::kBadTau, "tau must lie in (0, 1/m]");
  }
  if (b < 0.0) fail(ErrorCode::kInvalidArgument, "b must be non-negative");
  if (lipschitz < 0.0) {
    fail(ErrorCode::kInvalidArgument, "lipschitz must be non-negative");
  }
}

double epsilon_exact(const MechanismConfig& cfg) {
  if (cfg.m < 2) fail(ErrorCode::kDimensionMismatch, "need m >= 2");
  const double md = static_cast<double>(cfg.m);
  if (!(cfg.k > 0.0)) fail(ErrorCode::kInvalidArgument, "k must be positive");
  if (!(cfg.eta > 0.0) || md * cfg.eta > 1.0 + kSimplexFloorTolerance) {
    fail(ErrorCode::kBadEta, "eta must lie in (0, 1/m]");
  }
  if (!(cfg.tau > 0.0)) fail(ErrorCode::kBadTau, "tau must be positive");
  if (cfg.b < 0.0 || cfg.lipschitz < 0.0) {
    fail(ErrorCode::kInvalidArgument, "b and lipschitz must be non-negative");
  }
  const double apex_shape = cfg.k * (1.0 - (md - 1.0) * cfg.eta);
  if (!(apex_shape > 0.0)) {
    fail(ErrorCode::kDegenerateConfig,
         "k (1 - (m-1) eta) must be positive, got " +
             std::to_string(apex_shape));
  }
  const double adjacency_term = std::sqrt(md) * cfg.lipschitz * cfg.b * cfg.k *
                                std::log(1.0 / cfg.tau);
  const double gamma_terms = (md - 1.0) * log_gamma(cfg.k * cfg.eta) +
                             log_gamma(apex_shape) -
                             md * log_gamma(cfg.k / md);
  return std::max(0.0, adjacency_term + gamma_terms);
}

double chebyshev_half_width(std::uint64_t n, double confidence) {
  if (n == 0) fail(ErrorCode::kBadAccuracy, "need n >= 1");
  if (!(confidence > 0.0) || !(confidence < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "confidence must lie in (0, 1)");
  }
  return std::sqrt(1.0 / (4.0 * static_cast<double>(n) * (1.0 - confidence)));
}

std::uint64_t required_samples(double t, double confidence) {
  if (!(t > 0.0)) fail(ErrorCode::kBadAccuracy, "accuracy t must be positive");
  if (!(confidence > 0.0) || !(confidence < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "confidence must lie in (0, 1)");
  }
  const double target = 1.0 - confidence;
  const auto satisfies = [&](std::uint64_t n) {
    return n >= 1 &&
           1.0 / (4.0 * static_cast<double>(n) * t * t) <= target;
  };
  auto n = static_cast<std::uint64_t>(
      std::ceil(1.0 / (4.0 * t * t * target)));
  if (n == 0) n = 1;
  while (!satisfies(n)) ++n;
  while (n > 1 && satisfies(n - 1)) --n;
  return n;
}

DeltaEstimate delta_mc(double k, double eta, double tau, Eigen::Index m,
                       std::uint64_t n_samples, double confidence,
                       RngState& rng, int worker_count) {
  if (m < 2) fail(ErrorCode::kDimensionMismatch, "need m >= 2");
  const double md = static_cast<double>(m);
  if (md * tau > 1.0 + kSimplexFloorTolerance) {
    // The tau-restricted simplex is empty; every draw lies outside it.
    return {1.0, 0.0, 0};
  }
  if (tau <= 0.0) {
    // The restricted simplex is the whole simplex; no draw can escape it.
    return {0.0, 0.0, 0};
  }
  if (n_samples == 0) fail(ErrorCode::kBadAccuracy, "need n_samples >= 1");
  if (worker_count < 1) {
    fail(ErrorCode::kInvalidArgument, "worker_count must be >= 1");
  }

  Eigen::VectorXd vertex = Eigen::VectorXd::Constant(m, eta);
  vertex[m - 1] = 1.0 - (md - 1.0) * eta;
  const RestrictedSimplexVector input = validate(vertex, eta);
  const DirichletMechanism mech(k, eta, m);

  // Deterministic split of the budget across labeled worker streams; counts
  // are integers so the sum is independent of evaluation order.
  std::uint64_t outside = 0;
  const auto workers = static_cast<std::uint64_t>(worker_count);
  for (std::uint64_t w = 0; w < workers; ++w) {
    std::uint64_t quota = n_samples / workers + (w < n_samples % workers);
    RngState stream = rng.child(w);
    for (std::uint64_t i = 0; i < quota; ++i) {
      const SimplexVector draw = mech.sample(input, stream);
      if (draw.entries().minCoeff() < tau) ++outside;
    }
  }
  const double delta =
      static_cast<double>(outside) / static_cast<double>(n_samples);
  return {delta, chebyshev_half_width(n_samples, confidence), n_samples};
}

double delta_beta_exact(double k, double eta, double tau) {
  if (!(k > 0.0) || !(eta > 0.0) || eta > 0.5 + kSimplexFloorTolerance) {
    fail(ErrorCode::kInvalidArgument, "need k > 0 and eta in (0, 1/2]");
  }
  if (2.0 * tau > 1.0 + kSimplexFloorTolerance) return 1.0;
  if (tau <= 0.0) return 0.0;
  const double a = k * eta;
  const double b = k * (1.0 - eta);
  // std::lgamma keeps this oracle independent of the library's own log-gamma.
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const auto density = [&](double x) {
    return std::exp(log_norm + (a - 1.0) * std::log(x) +
                    (b - 1.0) * std::log1p(-x));
  };
  const double inside = integrate(density, tau, 1.0 - tau, 1e-12);
  return std::clamp(1.0 - inside, 0.0, 1.0);
}

double spectral_norm(const Eigen::MatrixXd& w) {
  if (w.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  return svd.singularValues()[0];
}

double lipschitz_upper_bound(const std::vector<Eigen::MatrixXd>& weights,
                             double head_factor) {
  double bound = head_factor;
  for (const auto& w : weights) bound *= spectral_norm(w);
  return bound;
}

PrivacyParams price(const MechanismConfig& cfg, double delta_accuracy,
                    double confidence, RngState& rng, int worker_count) {
  cfg.check();
  PrivacyParams out;
  out.epsilon = epsilon_exact(cfg);
  if (cfg.m == 2) {
    // Deterministic path: the vertex draw's first coordinate is Beta
    // distributed, so delta reduces to a 1-D integral.
    out.delta = delta_beta_exact(cfg.k, cfg.eta, cfg.tau);
    out.delta_half_width = 0.0;
    out.n_samples = 0;
    return out;
  }
  const std::uint64_t n = required_samples(delta_accuracy, confidence);
  const DeltaEstimate est =
      delta_mc(cfg.k, cfg.eta, cfg.tau, cfg.m, n, confidence, rng,
               worker_count);
  out.delta = est.delta;
  out.delta_half_width = est.half_width;
  out.n_samples = est.n_samples;
  return out;
}

}  // namespace dpk
