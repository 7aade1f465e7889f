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
#include <span>
#include <string>
#include <vector>

#include "obliqforest/obliquetree.hpp"
#include "obliqforest/rng.hpp"
#include "obliqforest/survdata.hpp"

namespace obliqforest {

/// multinomial draws a classic bootstrap (counts of n draws with
/// replacement, weights sum to n); uniform_0_10 draws each weight uniformly
/// from {0, ..., 10}.
enum class BootstrapMode { kMultinomial, kUniform0_10 };

struct ForestParams {
  int n_tree = 500;
  GrowParams grow;
  std::uint64_t seed = 0;
  BootstrapMode bootstrap_mode = BootstrapMode::kMultinomial;
  int n_threads_hint = 0;  // runtime-only; never serialized

  void validate(int p) const;
};

/// Trained ensemble. Trees, params (with resolved mtry), training column
/// names and event-time grid fully determine predictions; in-bag weights
/// are reproducible from (seed, bootstrap_mode) and are regenerated on
/// demand after a load.
struct Forest {
  std::vector<ObliqueTree> trees;
  ForestParams params;
  std::vector<std::string> col_names;
  std::vector<double> train_event_times;
  std::vector<std::vector<double>> inbag_weights;  // empty after load until regenerated

  int p() const { return static_cast<int>(col_names.size()); }
};

/// Integer-valued bootstrap weights; weight 0 marks a row out-of-bag.
std::vector<double> bootstrap_weights(int n, BootstrapMode mode, Rng& rng);

/// Grows params.n_tree trees, each from its own deterministic rng streams
/// keyed by (seed, tree index). The result is independent of thread count
/// and scheduling.
Forest fit(const SurvivalDataset& ds, ForestParams params);

/// Ensemble-mean survival probabilities, one row per query row, one column
/// per horizon time (ascending).
Eigen::MatrixXd predict_survival(const Forest& forest, const Eigen::MatrixXd& x_new,
                                 std::span<const double> horizon_times);

/// Mortality risk score per row: ensemble-mean cumulative hazard summed
/// over the training event-time grid (higher = higher predicted risk).
Eigen::VectorXd predict_mortality(const Forest& forest, const Eigen::MatrixXd& x_new);

struct OobResult {
  Eigen::MatrixXd survival;     // n x h; rows with oob_count 0 hold NaN
  Eigen::VectorXd mortality;    // NaN where oob_count is 0
  std::vector<int> oob_counts;  // trees contributing per row
};

/// Aggregates, per training row, only the trees where that row has in-bag
/// weight 0. Regenerates in-bag weights from the seed when absent (after
/// load). Rows never out-of-bag are flagged via oob_counts, not errors.
OobResult oob_predict(const Forest& forest, const SurvivalDataset& ds, std::span<const double> horizon_times);

/// Rebuilds the per-tree bootstrap weights from (seed, bootstrap_mode);
/// identical to the fit-time draws because weights use their own rng
/// stream. ds must be the training dataset.
std::vector<std::vector<double>> regenerate_inbag_weights(const Forest& forest, const SurvivalDataset& ds);

/// Populates forest.inbag_weights after a load (no-op when present).
void ensure_inbag_weights(Forest& forest, const SurvivalDataset& ds);

/// Versioned structured-text (JSON) model file with a content checksum;
/// numeric values are shortest round-trip decimals, so load(save(f))
/// reproduces predictions bit for bit.
void save(const Forest& forest, const std::string& path);
Forest load(const std::string& path);

std::string to_model_string(const Forest& forest);
Forest from_model_string(const std::string& text);

}  // namespace obliqforest
