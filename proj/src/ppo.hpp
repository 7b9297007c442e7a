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
#include <optional>
#include <vector>

#include "gridworld.hpp"
#include "net.hpp"
#include "rng.hpp"

namespace dpk {

struct PpoConfig {
  double clip_ratio = 0.2;
  double discount = 0.99;
  double gae_lambda = 0.95;
  int steps_per_epoch = 1000;
  int update_epochs = 10;
  int minibatch_size = 100;
  double entropy_coef = 0.01;
  double policy_lr = 3e-4;
  double value_lr = 1e-3;
  double target_kl = 0.015;
};

struct StepRecord {
  Eigen::VectorXd obs;
  int action = 0;
  double reward = 0.0;
  double logp_old = 0.0;
  double value = 0.0;
  bool done = false;
  bool truncated = false;
  double final_value = 0.0;  // V of the post-step obs when truncated
  bool has_teacher = false;
  Eigen::VectorXd teacher_pi;   // noisy teacher policy at obs
  double teacher_dist = 0.0;    // ||pi_behavior - teacher_pi||_2
  bool gate_active = false;     // teacher_dist exceeded the gate radius
};

struct Rollout {
  std::vector<StepRecord> steps;
  double bootstrap_value = 0.0;  // V of the obs after the last step
  std::vector<double> episode_returns;  // episodes completed this rollout
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns_to_go;
};

/// Answers teacher queries during rollout collection.
class TeacherHook {
 public:
  virtual ~TeacherHook() = default;
  /// Noisy (or exact) teacher policy at this observation.
  virtual Eigen::VectorXd query(const Eigen::VectorXd& obs, RngState& rng) = 0;
  /// Gate radius for this rollout; discrepancies inside it are attributed to
  /// privacy noise and carry no penalty.
  virtual double gate_radius() const = 0;
};

/// Collects T on-policy steps, continuing across episode boundaries and
/// resetting the environment as episodes end. When a teacher hook is given,
/// every step also stores the teacher's (noisy) policy, the behavior-policy
/// distance to it, and the gate flag evaluated at the hook's radius.
Rollout collect_rollout(FeatureGrid& env, const PolicyNet& policy,
                        const ValueNet& value, int steps,
                        TeacherHook* teacher, RngState& env_rng,
                        RngState& action_rng, RngState& teacher_rng);

/// Generalized advantage estimation within episode boundaries; truncated
/// episodes bootstrap from their recorded final value. returns = adv + V.
void gae_advantages(Rollout& rollout, double discount, double gae_lambda);

/// Gated 2-norm distillation term added to the PPO loss; see the kickstart
/// module for the gate itself. The gate flags stored in the rollout are
/// treated as constants; gradients flow only through the student policy in
/// gate-active terms, with the norm smoothed as sqrt(d^2 + eps) - sqrt(eps).
struct PenaltyTerm {
  double balance = 1.0;
  double smoothing_eps = 1e-8;
};

struct UpdateDiagnostics {
  double surrogate = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double penalty_mean = 0.0;
  double gate_fraction = 0.0;
  int epochs_run = 0;
};

/// One PPO update over the rollout: advantages normalized per batch, clipped
/// surrogate plus entropy bonus on the policy, squared-error regression on
/// the value net, minibatch Adam steps, early stop when the mean KL to the
/// behavior policy exceeds target_kl. With a penalty term attached the
/// update optimizes the augmented objective; with all gates off it is
/// bit-identical to the plain update at the same RNG state.
UpdateDiagnostics ppo_update(PolicyNet& policy, ValueNet& value,
                             AdamOptimizer& policy_opt,
                             AdamOptimizer& value_opt, Rollout& rollout,
                             const PpoConfig& cfg, RngState& shuffle_rng,
                             const PenaltyTerm* penalty = nullptr);

/// Samples an action index from a probability vector.
int sample_action(const Eigen::VectorXd& pi, RngState& rng);

}  // namespace dpk
