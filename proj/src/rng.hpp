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

#include <cstdint>
#include <random>
#include <string_view>

namespace dpk {

/// Deterministic random stream. Identical seeds produce identical sequences.
///
/// Every consumer of randomness takes an RngState by reference; there is no
/// ambient global generator. Named child streams support the splitting rule
/// used by the experiment harness:
///
///   child seed = splitmix64(parent seed XOR fnv1a64(label))
///
/// so one master seed reproduces an entire run regardless of how many
/// components draw from it.
class RngState {
 public:
  explicit RngState(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Derives an independent stream identified by a label.
  RngState child(std::string_view label) const;
  /// Derives an independent stream identified by an index (worker fan-out).
  RngState child(std::uint64_t index) const;

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_double();
  /// Uniform double in (0, 1); never returns exactly 0.
  double next_double_open();
  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal deviate (Box-Muller).
  double next_normal();

  /// Gamma(shape, 1) deviate; requires shape >= 1 (Marsaglia-Tsang).
  double next_gamma_ge1(double shape);

  /// log of a Gamma(shape, 1) deviate, valid for any shape > 0. Shapes below 1
  /// use the boosting identity G_a = G_{a+1} * U^{1/a} evaluated in log space,
  /// so tiny shapes do not underflow. Throws ShapeUnderflow when even the
  /// log-space value is not finite.
  double next_log_gamma(double shape);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view s);

}  // namespace dpk
