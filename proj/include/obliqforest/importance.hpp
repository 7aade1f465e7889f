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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "obliqforest/forest.hpp"
#include "obliqforest/survdata.hpp"

namespace obliqforest {

enum class ViTechnique { kNegation, kPermutation, kAnova };

/// Prediction-accuracy metric used by negation/permutation importance:
/// maps (time, status, risk) to a score where higher is better. The default
/// is Harrell's C on OOB mortality.
using ViMetric =
    std::function<double(std::span<const double>, std::span<const int>, std::span<const double>)>;

struct VIReport {
  ViTechnique technique = ViTechnique::kNegation;
  std::vector<double> values;    // aligned to forest col_names
  double baseline_metric = 0.0;  // OOB Harrell C; meaningless for anova
  bool has_baseline = false;
  std::uint64_t seed = 0;  // permutation only
};

/// Negation importance: per predictor, the drop in out-of-bag prediction
/// accuracy (default: Harrell C on mortality) after flipping the sign of
/// every coefficient of that predictor in every internal node. Applied as a
/// routing-time overlay; the stored forest is never modified. Predictors
/// absent from all nodes get exactly 0.
VIReport negation_vi(const Forest& forest, const SurvivalDataset& ds, const ViMetric& metric = nullptr);

/// Permutation importance: per predictor, the drop in out-of-bag accuracy
/// after permuting that predictor's values across all rows. n_repeats
/// permutations are averaged (default 1).
VIReport permutation_vi(const Forest& forest, const SurvivalDataset& ds, std::uint64_t seed, int n_repeats = 1,
                        const ViMetric& metric = nullptr);

/// ANOVA importance: fraction (or raw count when normalized = false) of a
/// predictor's node-coefficient occurrences with Wald p-value <= 0.01.
/// Requires a forest grown with the fast or cph strategy.
VIReport anova_vi(const Forest& forest, bool normalized = true);

/// Harrell-style C treating importance values as predictions of the binary
/// relevance labels: the probability a relevant predictor outranks an
/// irrelevant one (ties 0.5). Both classes must be present.
double vi_discrimination(std::span<const double> vi_values, std::span<const int> relevance);

}  // namespace obliqforest
