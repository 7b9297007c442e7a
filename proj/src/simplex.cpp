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

#include "simplex.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace dpk {

namespace {

void check_entries(const Eigen::VectorXd& v) {
  if (v.size() < 2) {
    fail(ErrorCode::kDimensionMismatch, "simplex vectors need m >= 2 entries");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      fail(ErrorCode::kInvalidArgument, "non-finite entry at index " +
                                            std::to_string(i));
    }
  }
  // Accumulate in entry order so the check is reproducible.
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += v[i];
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    fail(ErrorCode::kSumMismatch,
         "entries sum to " + std::to_string(sum) + ", expected 1");
  }
  if (v.minCoeff() < 0.0) {
    fail(ErrorCode::kFloorViolation, "negative entry");
  }
}

}  // namespace

SimplexVector::SimplexVector(Eigen::VectorXd entries)
    : entries_(std::move(entries)) {
  check_entries(entries_);
}

RestrictedSimplexVector::RestrictedSimplexVector(SimplexVector inner,
                                                 double eta)
    : inner_(std::move(inner)), eta_(eta) {
  const auto m = static_cast<double>(inner_.dimension());
  if (eta < 0.0 || m * eta > 1.0 + kSimplexFloorTolerance) {
    fail(ErrorCode::kBadEta, "eta * m must lie in [0, 1], got eta = " +
                                 std::to_string(eta));
  }
  if (inner_.entries().minCoeff() < eta - kSimplexFloorTolerance) {
    fail(ErrorCode::kFloorViolation,
         "entry " + std::to_string(inner_.entries().minCoeff()) +
             " below floor " + std::to_string(eta));
  }
}

RestrictedSimplexVector validate(const Eigen::VectorXd& v, double eta) {
  return RestrictedSimplexVector(SimplexVector(v), eta);
}

RestrictedSimplexVector validate(const std::vector<double>& v, double eta) {
  return validate(
      Eigen::Map<const Eigen::VectorXd>(v.data(),
                                        static_cast<Eigen::Index>(v.size())),
      eta);
}

std::vector<RestrictedSimplexVector> vertices(Eigen::Index m, double eta) {
  if (m < 2) {
    fail(ErrorCode::kDimensionMismatch, "need m >= 2");
  }
  const double md = static_cast<double>(m);
  if (eta < 0.0 || md * eta > 1.0 + kSimplexFloorTolerance) {
    fail(ErrorCode::kBadEta, "m * eta must not exceed 1");
  }
  const double apex = 1.0 - (md - 1.0) * eta;
  std::vector<RestrictedSimplexVector> out;
  // At eta = 1/m every coordinate equals eta and the permutations coincide.
  const bool degenerate = std::abs(apex - eta) <= kSimplexFloorTolerance;
  const Eigen::Index count = degenerate ? 1 : m;
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < count; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Constant(m, eta);
    v[j] = apex;
    out.emplace_back(SimplexVector(std::move(v)), eta);
  }
  return out;
}

double l2_distance(const SimplexVector& a, const SimplexVector& b) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorCode::kDimensionMismatch,
         "dimensions " + std::to_string(a.dimension()) + " vs " +
             std::to_string(b.dimension()));
  }
  return (a.entries() - b.entries()).norm();
}

}  // namespace dpk
