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

#include "ledger.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace dpk {

PrivacyLedger::PrivacyLedger(Budget budget) : budget_(budget) {}

void PrivacyLedger::record(int rollout, double k, double epsilon,
                           double delta) {
  if (k < 0.0 || epsilon < 0.0 || delta < 0.0) {
    fail(ErrorCode::kInvalidArgument, "negative ledger entry");
  }
  if (k == 0.0) {
    entries_.push_back({rollout, 0.0, 0.0, 0.0});
    if (!expended_) {
      expended_ = true;
      expended_at_ = rollout;
    }
    return;
  }
  if (expended_) {
    fail(ErrorCode::kAlreadyExpended,
         "non-zero-k entry at rollout " + std::to_string(rollout) +
             " after expiry at rollout " + std::to_string(expended_at_));
  }
  entries_.push_back({rollout, k, epsilon, delta});
  // Accumulate in entry order so totals are reproducible.
  epsilon_total_ += epsilon;
  delta_total_ += delta;
  if (epsilon_total_ > budget_.eps_max || delta_total_ > budget_.delta_max) {
    // Crossing entry stays honest; expiry starts with the next rollout.
    expended_ = true;
    expended_at_ = rollout + 1;
  }
}

nlohmann::json PrivacyLedger::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"j", e.rollout},
                       {"k", e.k},
                       {"eps", e.epsilon},
                       {"delta", e.delta}});
  }
  return nlohmann::json{
      {"entries", entries},
      {"totals", {{"eps", epsilon_total_}, {"delta", delta_total_}}},
      {"budget", {{"eps_max", budget_.eps_max},
                  {"delta_max", budget_.delta_max}}},
      {"expended_at", expended_at_},
  };
}

double KSchedule::step(int rollout) const {
  if (rollout < 0) fail(ErrorCode::kInvalidArgument, "rollout must be >= 0");
  const double k = k0 * std::pow(c, static_cast<double>(rollout));
  return k >= k_min ? k : 0.0;
}

SimplexVector teacher_policy(const PrivacyLedger& ledger,
                             const DirichletMechanism& mech,
                             const RestrictedSimplexVector& pi_true,
                             RngState& rng) {
  if (ledger.expended()) {
    // (0,0)-differential privacy: the draw never touches pi_true.
    return flat_simplex_sample(pi_true.dimension(), rng);
  }
  return mech.sample(pi_true, rng);
}

}  // namespace dpk
