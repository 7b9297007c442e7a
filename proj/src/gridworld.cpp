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

#include "gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace dpk {

namespace {
// dx, dy per action: up, down, left, right, stay.
constexpr int kDx[5] = {0, 0, -1, 1, 0};
constexpr int kDy[5] = {-1, 1, 0, 0, 0};

double unit_double(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}
}  // namespace

FeatureGrid::FeatureGrid(GridLayout layout) : layout_(std::move(layout)) {
  if (layout_.width < 2 || layout_.height < 2) {
    fail(ErrorCode::kInvalidArgument, "grid must be at least 2x2");
  }
  if (layout_.obs_dim < kBaseFeatures) {
    fail(ErrorCode::kInvalidArgument,
         "obs_dim must be at least " + std::to_string(kBaseFeatures));
  }
  if (layout_.max_steps < 1) {
    fail(ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  }
  const int cells = layout_.width * layout_.height;
  hazard_mask_.assign(cells, false);
  for (const auto& [hx, hy] : layout_.hazards) {
    if (hx < 0 || hx >= layout_.width || hy < 0 || hy >= layout_.height) {
      fail(ErrorCode::kInvalidArgument, "hazard outside the grid");
    }
    hazard_mask_[cell_index(hx, hy)] = true;
  }
  const auto [gx, gy] = layout_.goal;
  if (gx < 0 || gx >= layout_.width || gy < 0 || gy >= layout_.height) {
    fail(ErrorCode::kInvalidArgument, "goal outside the grid");
  }
  if (hazard_mask_[cell_index(gx, gy)]) {
    fail(ErrorCode::kInvalidArgument, "goal coincides with a hazard");
  }
  for (int y = 0; y < layout_.height; ++y) {
    for (int x = 0; x < layout_.width; ++x) {
      if (!is_goal(x, y) && !hazard_mask_[cell_index(x, y)]) {
        free_cells_.emplace_back(x, y);
      }
    }
  }
  if (free_cells_.empty()) {
    fail(ErrorCode::kInvalidArgument, "no free start cells");
  }
  const int channels = layout_.obs_dim - kBaseFeatures;
  nuisance_.resize(static_cast<std::size_t>(cells) * channels);
  for (int c = 0; c < cells; ++c) {
    for (int j = 0; j < channels; ++j) {
      const std::uint64_t key =
          layout_.feature_seed ^
          (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(c) +
           static_cast<std::uint64_t>(j) + 1);
      nuisance_[static_cast<std::size_t>(c) * channels + j] =
          unit_double(splitmix64(key));
    }
  }
}

bool FeatureGrid::is_goal(int x, int y) const {
  return x == layout_.goal.first && y == layout_.goal.second;
}

bool FeatureGrid::is_hazard(int x, int y) const {
  return hazard_mask_[cell_index(x, y)];
}

Eigen::VectorXd FeatureGrid::reset(RngState& rng) {
  const auto pick = rng.next_below(free_cells_.size());
  ax_ = free_cells_[pick].first;
  ay_ = free_cells_[pick].second;
  steps_ = 0;
  episode_return_ = 0.0;
  done_ = false;
  return observe();
}

Eigen::VectorXd FeatureGrid::observe() const {
  Eigen::VectorXd obs(layout_.obs_dim);
  const double wspan = static_cast<double>(layout_.width - 1);
  const double hspan = static_cast<double>(layout_.height - 1);
  obs[0] = static_cast<double>(ax_) / wspan;
  obs[1] = static_cast<double>(ay_) / hspan;
  obs[2] = (static_cast<double>(layout_.goal.first - ax_) / wspan + 1.0) / 2.0;
  obs[3] = (static_cast<double>(layout_.goal.second - ay_) / hspan + 1.0) / 2.0;
  double nearest = 1.0;
  if (!layout_.hazards.empty()) {
    int best = layout_.width + layout_.height;
    for (const auto& [hx, hy] : layout_.hazards) {
      best = std::min(best, std::abs(hx - ax_) + std::abs(hy - ay_));
    }
    nearest = static_cast<double>(best) /
              static_cast<double>(layout_.width + layout_.height - 2);
  }
  obs[4] = nearest;
  for (int a = 0; a < 4; ++a) {
    const int nx = std::clamp(ax_ + kDx[a], 0, layout_.width - 1);
    const int ny = std::clamp(ay_ + kDy[a], 0, layout_.height - 1);
    obs[5 + a] = is_hazard(nx, ny) ? 1.0 : 0.0;
  }
  const int channels = layout_.obs_dim - kBaseFeatures;
  const int cell = cell_index(ax_, ay_);
  for (int j = 0; j < channels; ++j) {
    obs[kBaseFeatures + j] =
        nuisance_[static_cast<std::size_t>(cell) * channels + j];
  }
  return obs;
}

StepResult FeatureGrid::step(int action) {
  if (action < 0 || action >= kNumActions) {
    fail(ErrorCode::kBadAction, "action " + std::to_string(action));
  }
  if (done_) {
    fail(ErrorCode::kInvalidArgument, "episode is over; call reset()");
  }
  ax_ = std::clamp(ax_ + kDx[action], 0, layout_.width - 1);
  ay_ = std::clamp(ay_ + kDy[action], 0, layout_.height - 1);
  ++steps_;

  StepResult out;
  if (is_goal(ax_, ay_)) {
    out.reward = 10.0;
    done_ = true;
  } else {
    out.reward = is_hazard(ax_, ay_) ? -1.0 : -0.01;
    if (steps_ >= layout_.max_steps) {
      done_ = true;
      out.truncated = true;
    }
  }
  episode_return_ += out.reward;
  out.done = done_;
  out.observation = observe();
  return out;
}

}  // namespace dpk
