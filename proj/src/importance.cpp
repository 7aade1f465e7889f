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

#include "obliqforest/importance.hpp"

#include <algorithm>
#include <stdexcept>

#include "obliqforest/metrics.hpp"
#include "obliqforest/threading.hpp"

namespace obliqforest {

namespace {

// Per-row out-of-bag context reused across the per-predictor evaluations.
struct OobContext {
  std::vector<std::vector<int>> oob_trees;  // tree indices per row
  std::vector<std::size_t> usable_rows;     // rows with at least one OOB tree
  std::vector<double> time;
  std::vector<int> status;
};

OobContext build_oob_context(const Forest& forest, const SurvivalDataset& ds,
                             const std::vector<std::vector<double>>& inbag) {
  OobContext ctx;
  ctx.oob_trees.resize(static_cast<std::size_t>(ds.n()));
  for (int i = 0; i < ds.n(); ++i) {
    auto& list = ctx.oob_trees[static_cast<std::size_t>(i)];
    for (std::size_t t = 0; t < forest.trees.size(); ++t) {
      if (inbag[t][static_cast<std::size_t>(i)] == 0.0) list.push_back(static_cast<int>(t));
    }
    if (!list.empty()) {
      ctx.usable_rows.push_back(static_cast<std::size_t>(i));
      ctx.time.push_back(ds.time[i]);
      ctx.status.push_back(ds.status[i]);
    }
  }
  if (ctx.usable_rows.empty()) throw std::runtime_error("no out-of-bag rows available");
  return ctx;
}

// OOB mortality over the usable rows. negate_col flips that predictor's
// coefficients during routing; subst_col >= 0 replaces that column's value
// with subst_vals[row].
std::vector<double> oob_mortality(const Forest& forest, const SurvivalDataset& ds, const OobContext& ctx,
                                  int negate_col, int subst_col, const std::vector<double>* subst_vals) {
  std::vector<double> risk(ctx.usable_rows.size());
  std::vector<double> row(static_cast<std::size_t>(ds.p()));
  for (std::size_t r = 0; r < ctx.usable_rows.size(); ++r) {
    const std::size_t i = ctx.usable_rows[r];
    for (int j = 0; j < ds.p(); ++j) row[static_cast<std::size_t>(j)] = ds.x(static_cast<Eigen::Index>(i), j);
    if (subst_col >= 0) row[static_cast<std::size_t>(subst_col)] = (*subst_vals)[i];
    double acc = 0.0;
    for (const int t : ctx.oob_trees[i]) {
      const auto& tree = forest.trees[static_cast<std::size_t>(t)];
      acc += tree.nodes[static_cast<std::size_t>(route_to_leaf(tree, row, negate_col))].leaf_chf_grid_sum;
    }
    risk[r] = acc / static_cast<double>(ctx.oob_trees[i].size());
  }
  return risk;
}

std::vector<bool> predictors_used(const Forest& forest) {
  std::vector<bool> used(static_cast<std::size_t>(forest.p()), false);
  for (const auto& tree : forest.trees) {
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      for (const int col : node.combo.cols) used[static_cast<std::size_t>(col)] = true;
    }
  }
  return used;
}

double default_vi_metric(std::span<const double> time, std::span<const int> status, std::span<const double> risk) {
  return harrell_c(time, status, risk);
}

}  // namespace

VIReport negation_vi(const Forest& forest, const SurvivalDataset& ds, const ViMetric& metric) {
  const ViMetric score = metric ? metric : ViMetric(&default_vi_metric);
  std::vector<std::vector<double>> local;
  const auto& inbag = forest.inbag_weights.empty() ? (local = regenerate_inbag_weights(forest, ds), local)
                                                   : forest.inbag_weights;
  const OobContext ctx = build_oob_context(forest, ds, inbag);
  const std::vector<double> base_risk = oob_mortality(forest, ds, ctx, -1, -1, nullptr);
  const double baseline = score(ctx.time, ctx.status, base_risk);

  VIReport report;
  report.technique = ViTechnique::kNegation;
  report.baseline_metric = baseline;
  report.has_baseline = true;
  report.values.assign(static_cast<std::size_t>(forest.p()), 0.0);

  const std::vector<bool> used = predictors_used(forest);
  parallel_for(static_cast<std::size_t>(forest.p()), forest.params.n_threads_hint, [&](std::size_t j) {
    if (!used[j]) return;  // negating nothing: importance is exactly 0
    const std::vector<double> risk = oob_mortality(forest, ds, ctx, static_cast<int>(j), -1, nullptr);
    report.values[j] = baseline - score(ctx.time, ctx.status, risk);
  });
  return report;
}

VIReport permutation_vi(const Forest& forest, const SurvivalDataset& ds, std::uint64_t seed, int n_repeats,
                        const ViMetric& metric) {
  if (n_repeats < 1) throw std::invalid_argument("permutation_vi: n_repeats must be >= 1");
  const ViMetric score = metric ? metric : ViMetric(&default_vi_metric);
  std::vector<std::vector<double>> local;
  const auto& inbag = forest.inbag_weights.empty() ? (local = regenerate_inbag_weights(forest, ds), local)
                                                   : forest.inbag_weights;
  const OobContext ctx = build_oob_context(forest, ds, inbag);
  const std::vector<double> base_risk = oob_mortality(forest, ds, ctx, -1, -1, nullptr);
  const double baseline = score(ctx.time, ctx.status, base_risk);

  VIReport report;
  report.technique = ViTechnique::kPermutation;
  report.baseline_metric = baseline;
  report.has_baseline = true;
  report.seed = seed;
  report.values.assign(static_cast<std::size_t>(forest.p()), 0.0);

  const std::vector<bool> used = predictors_used(forest);
  parallel_for(static_cast<std::size_t>(forest.p()), forest.params.n_threads_hint, [&](std::size_t j) {
    if (!used[j]) return;
    double vi = 0.0;
    for (int rep = 0; rep < n_repeats; ++rep) {
      Rng rng = Rng::stream(mix64(seed, static_cast<std::uint64_t>(rep)), kStreamPermute, j);
      std::vector<double> permuted(static_cast<std::size_t>(ds.n()));
      for (int i = 0; i < ds.n(); ++i) permuted[static_cast<std::size_t>(i)] = ds.x(i, static_cast<int>(j));
      rng.shuffle(permuted);
      const std::vector<double> risk = oob_mortality(forest, ds, ctx, -1, static_cast<int>(j), &permuted);
      vi += baseline - score(ctx.time, ctx.status, risk);
    }
    report.values[j] = vi / n_repeats;
  });
  return report;
}

VIReport anova_vi(const Forest& forest, bool normalized) {
  if (forest.params.grow.combo_strategy == ComboStrategy::kRandom) {
    throw std::invalid_argument("anova importance requires stored p-values (fast or cph strategy)");
  }
  std::vector<double> significant(static_cast<std::size_t>(forest.p()), 0.0);
  std::vector<double> total(static_cast<std::size_t>(forest.p()), 0.0);
  for (const auto& tree : forest.trees) {
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      for (std::size_t c = 0; c < node.combo.cols.size(); ++c) {
        const auto col = static_cast<std::size_t>(node.combo.cols[c]);
        total[col] += 1.0;
        if (node.combo.pvalues[static_cast<Eigen::Index>(c)] <= 0.01) significant[col] += 1.0;
      }
    }
  }
  VIReport report;
  report.technique = ViTechnique::kAnova;
  report.values.resize(static_cast<std::size_t>(forest.p()));
  for (std::size_t j = 0; j < report.values.size(); ++j) {
    if (normalized) {
      report.values[j] = total[j] > 0.0 ? significant[j] / total[j] : 0.0;
    } else {
      report.values[j] = significant[j];
    }
  }
  return report;
}

double vi_discrimination(std::span<const double> vi_values, std::span<const int> relevance) {
  if (vi_values.size() != relevance.size()) throw std::invalid_argument("vi_discrimination: length mismatch");
  double concordant = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < vi_values.size(); ++i) {
    if (relevance[i] != 1) continue;
    for (std::size_t j = 0; j < vi_values.size(); ++j) {
      if (relevance[j] != 0) continue;
      pairs += 1.0;
      if (vi_values[i] > vi_values[j]) {
        concordant += 1.0;
      } else if (vi_values[i] == vi_values[j]) {
        concordant += 0.5;
      }
    }
  }
  if (pairs == 0.0) throw std::invalid_argument("vi_discrimination: both relevance classes must be present");
  return concordant / pairs;
}

}  // namespace obliqforest
