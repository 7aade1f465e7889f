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

#include <Eigen/Core>
#include <span>
#include <vector>

#include "obliqforest/rng.hpp"

namespace obliqforest {

/// Sparse linear combination of predictors defining an oblique direction:
/// eta = sum coefs[c] * x[cols[c]]. pvalues holds the per-coefficient Wald
/// p-values when the combination came from Cox scoring; empty for random
/// combinations.
struct LinearCombo {
  std::vector<int> cols;
  Eigen::VectorXd coefs;
  Eigen::VectorXd pvalues;
};

struct SplitCandidate {
  double cutpoint = 0.0;
  double stat = 0.0;  // squared standardized log-rank statistic, chi^2(1) scale
};

/// Two-sample weighted log-rank statistic (O-E)^2 / V for the groups
/// eta <= cutpoint vs eta > cutpoint, on the chi^2 1-df scale (so 3.841459
/// corresponds to p = 0.05). Returns 0 when the variance vanishes; throws
/// "degenerate cutpoint" when either group has zero total weight.
double logrank_stat(std::span<const double> eta, std::span<const double> time, std::span<const int> status,
                    std::span<const double> weights, double cutpoint);

/// Up to n_split distinct values drawn uniformly without replacement from
/// the unique eta values that leave at least min_obs weighted observations
/// and min_events weighted events on each side. May return fewer than
/// n_split values (empty means no valid cutpoint exists). Result is sorted
/// ascending.
std::vector<double> sample_cutpoints(std::span<const double> eta, std::span<const double> weights,
                                     std::span<const int> status, int n_split, double min_obs, double min_events,
                                     Rng& rng);

/// Candidate with the largest log-rank statistic; ties broken by the
/// smallest cutpoint so the result does not depend on candidate order.
SplitCandidate best_cutpoint(std::span<const double> eta, std::span<const double> time, std::span<const int> status,
                             std::span<const double> weights, std::span<const double> candidates);

}  // namespace obliqforest
