// Copyright 2026 The obliqforest Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "obliqforest/rng.hpp"
#include "obliqforest/splitfind.hpp"
#include "obliqforest/survcurve.hpp"
#include "obliqforest/survdata.hpp"

namespace obliqforest {

/// How the linear combination at a node is derived: one Newton-Raphson step
/// of Cox scoring (fast), scoring iterated to convergence with at most 20
/// iterations (cph), or coefficients drawn uniformly from [-1, 1] on
/// sd-standardized columns (random).
enum class ComboStrategy { kFast, kCph, kRandom };

struct GrowParams {
  int mtry = 0;  // 0 resolves to round(sqrt(p)) at fit time
  int n_split = 5;
  int n_retry = 3;
  double split_min_stat = 3.841459;
  int split_min_obs = 10;
  int split_min_events = 5;
  int leaf_min_obs = 5;
  int leaf_min_events = 1;
  ComboStrategy combo_strategy = ComboStrategy::kFast;

  int resolve_mtry(int p) const;
  void validate(int p) const;
};

/// Either an internal split (combo + cutpoint, children ids) or a leaf
/// holding the in-node weighted Kaplan-Meier survival curve and
/// Nelson-Aalen cumulative hazard. left < 0 marks a leaf.
struct TreeNode {
  LinearCombo combo;
  double cutpoint = 0.0;
  double stat = 0.0;  // log-rank statistic of the accepted split
  int left = -1;
  int right = -1;

  std::vector<double> km_times;
  std::vector<double> km_surv;
  std::vector<double> km_chf;
  double leaf_chf_grid_sum = 0.0;  // derived cache: chf summed over the training event grid

  bool is_leaf() const { return left < 0; }
};

struct ObliqueTree {
  std::vector<TreeNode> nodes;  // root at index 0
  int max_depth_reached = 0;
  int n_leaves = 0;
};

/// weighted observations >= split_min_obs and weighted events >=
/// split_min_events (the stopping predicate Algorithm-style growth needs).
bool is_splittable(double weighted_obs, double weighted_events, const GrowParams& params);

/// Grows one accelerated oblique survival tree. Rows with weight 0 are
/// excluded; nodes are processed breadth-first; each node tries up to
/// 1 + n_retry fresh mtry column samples before becoming a leaf. A
/// "collinear predictors" failure at a node counts as a failed attempt,
/// never aborts the tree.
ObliqueTree grow_tree(const SurvivalDataset& ds, const std::vector<double>& weights, const GrowParams& params,
                      Rng& rng);

/// Leaf id reached by routing x through the tree (left iff eta <= cutpoint).
/// negate_col >= 0 flips the sign of every coefficient of that predictor
/// during routing — the reversible overlay negation importance uses.
int route_to_leaf(const ObliqueTree& tree, std::span<const double> x, int negate_col = -1);

/// Leaf survival curve evaluated at the given ascending horizon times
/// (probability 1 before the first leaf event time, last value carried
/// forward). Throws on non-finite x entries.
std::vector<double> predict_tree_survival(const ObliqueTree& tree, std::span<const double> x,
                                          std::span<const double> horizon_times);

}  // namespace obliqforest
