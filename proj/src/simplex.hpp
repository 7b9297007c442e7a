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
#include <vector>

namespace dpk {

inline constexpr double kSimplexSumTolerance = 1e-9;
inline constexpr double kSimplexFloorTolerance = 1e-12;

/// Probability vector over m actions. Construction validates that entries are
/// non-negative and sum to 1 within kSimplexSumTolerance; entries are stored
/// bitwise as given, never renormalized.
class SimplexVector {
 public:
  explicit SimplexVector(Eigen::VectorXd entries);

  const Eigen::VectorXd& entries() const noexcept { return entries_; }
  Eigen::Index dimension() const noexcept { return entries_.size(); }
  double operator[](Eigen::Index i) const { return entries_[i]; }

 private:
  Eigen::VectorXd entries_;
};

/// Simplex vector certified to satisfy entry >= eta (within
/// kSimplexFloorTolerance) with m * eta <= 1.
class RestrictedSimplexVector {
 public:
  RestrictedSimplexVector(SimplexVector inner, double eta);

  const SimplexVector& inner() const noexcept { return inner_; }
  const Eigen::VectorXd& entries() const noexcept { return inner_.entries(); }
  Eigen::Index dimension() const noexcept { return inner_.dimension(); }
  double eta() const noexcept { return eta_; }

 private:
  SimplexVector inner_;
  double eta_;
};

/// Certifies a raw vector as a member of the eta-restricted simplex.
/// Throws SumMismatch, FloorViolation or BadEta; never renormalizes.
RestrictedSimplexVector validate(const Eigen::VectorXd& v, double eta);
RestrictedSimplexVector validate(const std::vector<double>& v, double eta);

/// The m vertices of the eta-restricted simplex: all coordinate permutations
/// of (1-(m-1)*eta, eta, ..., eta). When eta == 1/m the simplex collapses to
/// a point and a single vertex is returned.
std::vector<RestrictedSimplexVector> vertices(Eigen::Index m, double eta);

/// Euclidean distance between two simplex points of equal dimension.
double l2_distance(const SimplexVector& a, const SimplexVector& b);

}  // namespace dpk
