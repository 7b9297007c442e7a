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

#include "ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace dpk {

int sample_action(const Eigen::VectorXd& pi, RngState& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    acc += pi[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(pi.size() - 1);
}

Rollout collect_rollout(FeatureGrid& env, const PolicyNet& policy,
                        const ValueNet& value, int steps,
                        TeacherHook* teacher, RngState& env_rng,
                        RngState& action_rng, RngState& teacher_rng) {
  if (steps < 1) fail(ErrorCode::kInvalidArgument, "need steps >= 1");
  Rollout rollout;
  rollout.steps.reserve(static_cast<std::size_t>(steps));

  Eigen::VectorXd obs =
      env.episode_over() ? env.reset(env_rng) : env.observe();

  for (int t = 0; t < steps; ++t) {
    StepRecord rec;
    rec.obs = obs;
    const PolicyOutput pol = policy.forward(obs);
    rec.action = sample_action(pol.pi, action_rng);
    rec.logp_old = std::log(pol.pi[rec.action]);
    rec.value = value.forward(obs);
    if (teacher) {
      rec.has_teacher = true;
      rec.teacher_pi = teacher->query(obs, teacher_rng);
      rec.teacher_dist = (pol.pi - rec.teacher_pi).norm();
      rec.gate_active = rec.teacher_dist > teacher->gate_radius();
    }
    const StepResult sr = env.step(rec.action);
    rec.reward = sr.reward;
    rec.done = sr.done;
    rec.truncated = sr.truncated;
    if (sr.done) {
      if (sr.truncated) rec.final_value = value.forward(sr.observation);
      rollout.episode_returns.push_back(env.episode_return());
      obs = env.reset(env_rng);
    } else {
      obs = sr.observation;
    }
    rollout.steps.push_back(std::move(rec));
  }
  rollout.bootstrap_value =
      rollout.steps.back().done ? 0.0 : value.forward(obs);
  return rollout;
}

void gae_advantages(Rollout& rollout, double discount, double gae_lambda) {
  const auto T = static_cast<Eigen::Index>(rollout.steps.size());
  rollout.advantages.resize(T);
  rollout.returns_to_go.resize(T);
  double adv_next = 0.0;
  for (Eigen::Index t = T - 1; t >= 0; --t) {
    const StepRecord& rec = rollout.steps[t];
    double next_value;
    if (rec.done) {
      next_value = rec.truncated ? rec.final_value : 0.0;
    } else {
      next_value = (t == T - 1) ? rollout.bootstrap_value
                                : rollout.steps[t + 1].value;
    }
    const double delta = rec.reward + discount * next_value - rec.value;
    const double chain = rec.done ? 0.0 : 1.0;
    adv_next = delta + discount * gae_lambda * chain * adv_next;
    rollout.advantages[t] = adv_next;
    rollout.returns_to_go[t] = adv_next + rec.value;
  }
}

UpdateDiagnostics ppo_update(PolicyNet& policy, ValueNet& value,
                             AdamOptimizer& policy_opt,
                             AdamOptimizer& value_opt, Rollout& rollout,
                             const PpoConfig& cfg, RngState& shuffle_rng,
                             const PenaltyTerm* penalty) {
  const auto T = static_cast<Eigen::Index>(rollout.steps.size());
  if (T == 0) fail(ErrorCode::kInvalidArgument, "empty rollout");
  if (rollout.advantages.size() != T) {
    gae_advantages(rollout, cfg.discount, cfg.gae_lambda);
  }
  if (penalty) {
    for (const auto& rec : rollout.steps) {
      if (!rec.has_teacher) {
        fail(ErrorCode::kMissingTeacherData,
             "penalty term requires teacher policies in the rollout");
      }
    }
  }

  // Normalize advantages per batch (mean 0, std 1).
  Eigen::VectorXd adv = rollout.advantages;
  const double mean = adv.mean();
  adv.array() -= mean;
  const double std_dev =
      std::sqrt(adv.squaredNorm() / static_cast<double>(T));
  adv /= (std_dev + 1e-8);

  UpdateDiagnostics diag;
  double gates = 0.0;
  double penalty_sum = 0.0;
  for (const auto& rec : rollout.steps) {
    if (rec.has_teacher && rec.gate_active) {
      gates += 1.0;
      penalty_sum += rec.teacher_dist;
    }
  }
  diag.gate_fraction = gates / static_cast<double>(T);
  diag.penalty_mean = penalty_sum / static_cast<double>(T);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(T));
  std::iota(order.begin(), order.end(), 0);

  MlpGrads pgrads = policy.mlp.zero_grads();
  MlpGrads vgrads = value.mlp.zero_grads();
  Mlp::Cache cache;

  double surrogate_acc = 0.0, entropy_acc = 0.0, clip_acc = 0.0,
         vloss_acc = 0.0;
  long pass_count = 0;

  for (int epoch = 0; epoch < cfg.update_epochs; ++epoch) {
    // Fisher-Yates with the explicit stream keeps the pass order seed-exact.
    for (Eigen::Index i = T - 1; i > 0; --i) {
      const auto j = static_cast<Eigen::Index>(
          shuffle_rng.next_below(static_cast<std::uint64_t>(i + 1)));
      std::swap(order[i], order[j]);
    }
    double kl_epoch = 0.0;
    for (Eigen::Index start = 0; start < T; start += cfg.minibatch_size) {
      const Eigen::Index stop = std::min<Eigen::Index>(
          start + cfg.minibatch_size, T);
      const double batch_n = static_cast<double>(stop - start);
      pgrads.set_zero();
      vgrads.set_zero();
      double batch_loss = 0.0;
      for (Eigen::Index at = start; at < stop; ++at) {
        const StepRecord& rec = rollout.steps[order[at]];
        const double a_hat = adv[order[at]];

        const PolicyOutput pol = policy.forward(rec.obs, &cache);
        const double p_new = pol.pi[rec.action];
        const double logp_new = std::log(p_new);
        const double ratio = std::exp(logp_new - rec.logp_old);
        const double clipped =
            std::clamp(ratio, 1.0 - cfg.clip_ratio, 1.0 + cfg.clip_ratio);
        const double surr_un = ratio * a_hat;
        const double surr_cl = clipped * a_hat;

        Eigen::VectorXd dpi = Eigen::VectorXd::Zero(pol.pi.size());
        // Maximize min(surr_un, surr_cl): gradient flows only through the
        // unclipped branch, and only when it attains the min.
        if (surr_un <= surr_cl) {
          dpi[rec.action] -=
              a_hat * std::exp(-rec.logp_old) / batch_n;
        }
        batch_loss -= std::min(surr_un, surr_cl) / batch_n;

        // Entropy bonus.
        double entropy = 0.0;
        for (Eigen::Index i = 0; i < pol.pi.size(); ++i) {
          entropy -= pol.pi[i] * std::log(pol.pi[i]);
          dpi[i] += cfg.entropy_coef * (std::log(pol.pi[i]) + 1.0) / batch_n;
        }
        batch_loss -= cfg.entropy_coef * entropy / batch_n;

        if (penalty && rec.gate_active) {
          const double d = (pol.pi - rec.teacher_pi).norm();
          const double smooth =
              std::sqrt(d * d + penalty->smoothing_eps);
          batch_loss += penalty->balance *
                        (smooth - std::sqrt(penalty->smoothing_eps)) /
                        batch_n;
          dpi += (penalty->balance / (smooth * batch_n)) *
                 (pol.pi - rec.teacher_pi);
        }

        policy.backward(cache, pol, dpi, pgrads);

        const double v = value.forward(rec.obs, &cache);
        const double verr = v - rollout.returns_to_go[order[at]];
        value.backward(cache, 2.0 * verr / batch_n, vgrads);

        surrogate_acc += std::min(surr_un, surr_cl);
        entropy_acc += entropy;
        clip_acc += (ratio < 1.0 - cfg.clip_ratio ||
                     ratio > 1.0 + cfg.clip_ratio)
                        ? 1.0
                        : 0.0;
        vloss_acc += verr * verr;
        kl_epoch += rec.logp_old - logp_new;
        ++pass_count;
      }
      if (!std::isfinite(batch_loss)) {
        fail(ErrorCode::kNonFiniteLoss, "minibatch loss is not finite");
      }
      policy_opt.step(policy.mlp, pgrads);
      value_opt.step(value.mlp, vgrads);
    }
    diag.epochs_run = epoch + 1;
    diag.approx_kl = kl_epoch / static_cast<double>(T);
    if (diag.approx_kl > cfg.target_kl) break;
  }

  const double n = static_cast<double>(pass_count);
  diag.surrogate = surrogate_acc / n;
  diag.entropy = entropy_acc / n;
  diag.clip_fraction = clip_acc / n;
  diag.value_loss = vloss_acc / n;
  return diag;
}

}  // namespace dpk
