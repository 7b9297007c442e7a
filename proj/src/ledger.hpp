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

#include <vector>

#include <json.hpp>

#include "dirichlet.hpp"
#include "rng.hpp"
#include "simplex.hpp"

namespace dpk {

struct LedgerEntry {
  int rollout = 0;
  double k = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
};

struct Budget {
  double eps_max = 0.0;
  double delta_max = 0.0;
};

/// Per-rollout privacy accounting with simple summation composition. The
/// entry that crosses the budget is the last honest one: the teacher keeps
/// the mechanism for that rollout and switches to input-independent draws
/// from the next rollout on. Single-writer; never un-expends.
class PrivacyLedger {
 public:
  explicit PrivacyLedger(Budget budget);

  /// Logs one priced rollout. k == 0 marks schedule expiry (zero-cost entry,
  /// the teacher is expended from this rollout). k > 0 after expiry throws
  /// AlreadyExpended.
  void record(int rollout, double k, double epsilon, double delta);

  bool expended() const noexcept { return expended_; }
  /// First rollout index that runs in expended mode; -1 while within budget.
  int expended_at() const noexcept { return expended_at_; }
  double epsilon_total() const noexcept { return epsilon_total_; }
  double delta_total() const noexcept { return delta_total_; }
  const Budget& budget() const noexcept { return budget_; }
  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }

  nlohmann::json to_json() const;

 private:
  Budget budget_;
  std::vector<LedgerEntry> entries_;
  double epsilon_total_ = 0.0;
  double delta_total_ = 0.0;
  bool expended_ = false;
  int expended_at_ = -1;
};

/// Vanishing concentration schedule k_j = k0 * c^j, reporting 0 (the expended
/// signal) once the value falls below k_min.
struct KSchedule {
  double k0 = 5.0;
  double c = 0.3;
  double k_min = 0.01;

  double step(int rollout) const;
};

/// The teacher's output for one query: a mechanism draw at the ledger's
/// current state, or a flat-Dirichlet draw (uniform on the simplex,
/// independent of pi_true) once the ledger is expended.
SimplexVector teacher_policy(const PrivacyLedger& ledger,
                             const DirichletMechanism& mech,
                             const RestrictedSimplexVector& pi_true,
                             RngState& rng);

}  // namespace dpk
