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
#include <cstdint>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace dpk {

struct GridLayout {
  int width = 8;
  int height = 8;
  std::pair<int, int> goal{7, 7};
  std::vector<std::pair<int, int>> hazards{{2, 3}, {3, 5}, {5, 2}, {6, 5}};
  int max_steps = 64;
  int obs_dim = 16;
  // Seeds the nuisance feature table. Deliberately separate from the
  // episode seed so one embedding is shared by every run of an experiment.
  std::uint64_t feature_seed = 2026;
};

struct StepResult {
  Eigen::VectorXd observation;
  double reward = 0.0;
  bool done = false;
  // done by the step cap rather than the goal; the episode's value does not
  // terminate, so trainers bootstrap from the final observation.
  bool truncated = false;
};

/// Deterministic gridworld with feature-vector observations in [0, 1]^d.
///
/// Actions: 0 up, 1 down, 2 left, 3 right, 4 stay; moves off the grid are
/// clamped to the boundary. Rewards: +10 on the goal cell (terminal), -1 on
/// a hazard cell, -0.01 otherwise. Episodes end at the goal or after
/// max_steps interactions.
///
/// The observation packs normalized agent coordinates, goal-relative
/// offsets, hazard proximity features, and seed-stable pseudo-random
/// nuisance channels that pad the vector to obs_dim.
class FeatureGrid {
 public:
  static constexpr int kNumActions = 5;
  static constexpr int kBaseFeatures = 9;

  explicit FeatureGrid(GridLayout layout);

  /// Starts a new episode at a start cell drawn uniformly from the free
  /// cells (neither goal nor hazard) and returns the initial observation.
  Eigen::VectorXd reset(RngState& rng);

  /// Advances one step. Throws BadAction for actions outside [0, 5) and
  /// InvalidArgument when the episode is already over.
  StepResult step(int action);

  Eigen::VectorXd observe() const;
  bool episode_over() const noexcept { return done_; }
  int steps_taken() const noexcept { return steps_; }
  /// Undiscounted reward accumulated in the current episode.
  double episode_return() const noexcept { return episode_return_; }
  int agent_x() const noexcept { return ax_; }
  int agent_y() const noexcept { return ay_; }
  const GridLayout& layout() const noexcept { return layout_; }
  const std::vector<std::pair<int, int>>& free_cells() const noexcept {
    return free_cells_;
  }

  bool is_goal(int x, int y) const;
  bool is_hazard(int x, int y) const;

 private:
  int cell_index(int x, int y) const { return y * layout_.width + x; }

  GridLayout layout_;
  std::vector<bool> hazard_mask_;
  std::vector<std::pair<int, int>> free_cells_;
  std::vector<double> nuisance_;  // [cell][channel], flattened
  int ax_ = 0;
  int ay_ = 0;
  int steps_ = 0;
  double episode_return_ = 0.0;
  bool done_ = true;  // requires reset() before the first step
};

}  // namespace dpk
