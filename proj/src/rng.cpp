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

#include "rng.hpp"

#include <cmath>

#include "error.hpp"

namespace dpk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngState::RngState(std::uint64_t seed)
    : seed_(seed), engine_(splitmix64(seed)) {}

RngState RngState::child(std::string_view label) const {
  return RngState(splitmix64(seed_ ^ fnv1a64(label)));
}

RngState RngState::child(std::uint64_t index) const {
  return RngState(splitmix64(seed_ ^ (0x7fb5d329728ea185ULL + index)));
}

std::uint64_t RngState::next_u64() { return engine_(); }

double RngState::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::next_double_open() {
  double u;
  do {
    u = next_double();
  } while (u == 0.0);
  return u;
}

std::uint64_t RngState::next_below(std::uint64_t n) {
  // Rejection sampling keeps the distribution exactly uniform.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double RngState::next_normal() {
  const double u1 = next_double_open();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RngState::next_gamma_ge1(double shape) {
  if (shape < 1.0) {
    fail(ErrorCode::kInvalidArgument, "next_gamma_ge1 requires shape >= 1");
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngState::next_log_gamma(double shape) {
  if (!(shape > 0.0)) {
    fail(ErrorCode::kShapeUnderflow, "gamma shape must be positive");
  }
  if (shape >= 1.0) {
    return std::log(next_gamma_ge1(shape));
  }
  const double boosted = next_gamma_ge1(shape + 1.0);
  const double u = next_double_open();
  const double log_value = std::log(boosted) + std::log(u) / shape;
  if (!std::isfinite(log_value)) {
    fail(ErrorCode::kShapeUnderflow,
         "gamma variate underflowed in log space at shape " +
             std::to_string(shape));
  }
  return log_value;
}

}  // namespace dpk
