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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "obliqforest/importance.hpp"
#include "oracles.hpp"

using namespace obliqforest;

namespace {

// One predictor carries the whole signal (two tied-time survival regimes);
// the rest are noise.
SurvivalDataset single_driver_dataset(std::uint64_t seed, int n, int p) {
  Rng rng(seed);
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd time(n);
  Eigen::VectorXi status(n);
  for (int i = 0; i < n; ++i) {
    const bool late = i % 2 == 0;
    x(i, 0) = (late ? 2.0 : 0.0) + 0.5 * rng.normal();
    for (int j = 1; j < p; ++j) x(i, j) = rng.normal();
    time[i] = late ? 10.0 : 1.0;
    status[i] = 1;
  }
  std::vector<std::string> names;
  for (int j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
  return SurvivalDataset::create(x, time, status, names);
}

SurvivalDataset noise_dataset(std::uint64_t seed, int n, int p) {
  Rng rng(seed);
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd time(n);
  Eigen::VectorXi status(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
    time[i] = 0.1 + 5.0 * rng.uniform();
    status[i] = rng.uniform() < 0.8 ? 1 : 0;
  }
  status[0] = 1;
  std::vector<std::string> names;
  for (int j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
  return SurvivalDataset::create(x, time, status, names);
}

}  // namespace

TEST_CASE("negation leaves the forest bit-identical and zeroes unused predictors") {
  const SurvivalDataset ds = single_driver_dataset(1, 150, 4);
  ForestParams params;
  params.n_tree = 40;
  params.seed = 3;
  params.n_threads_hint = 2;
  const Forest forest = fit(ds, params);

  const std::vector<double> horizons{0.5, 2.0, 11.0};
  const Eigen::MatrixXd before_surv = predict_survival(forest, ds.x, horizons);
  const Eigen::VectorXd before_mort = predict_mortality(forest, ds.x);
  const std::string before_model = to_model_string(forest);

  const VIReport report = negation_vi(forest, ds);
  CHECK(report.has_baseline);
  CHECK(report.baseline_metric > 0.9);  // strong driver, tied-time groups

  CHECK(predict_survival(forest, ds.x, horizons) == before_surv);
  CHECK(predict_mortality(forest, ds.x) == before_mort);
  CHECK(to_model_string(forest) == before_model);
}

TEST_CASE("predictors never selected get importance exactly 0") {
  const SurvivalDataset ds = noise_dataset(2, 60, 3);
  ForestParams params;
  params.n_tree = 5;
  params.seed = 5;
  params.grow.split_min_stat = 1e9;  // single-leaf trees: nothing selected
  const Forest forest = fit(ds, params);
  const VIReport neg = negation_vi(forest, ds);
  const VIReport perm = permutation_vi(forest, ds, 9);
  for (int j = 0; j < 3; ++j) {
    CHECK(neg.values[static_cast<std::size_t>(j)] == 0.0);
    CHECK(perm.values[static_cast<std::size_t>(j)] == 0.0);
  }
  const VIReport anova = anova_vi(forest);
  for (int j = 0; j < 3; ++j) CHECK(anova.values[static_cast<std::size_t>(j)] == 0.0);
}

TEST_CASE("permuting a constant predictor changes nothing") {
  SurvivalDataset ds = single_driver_dataset(3, 120, 4);
  ds.x.col(3).setConstant(2.25);
  ds = SurvivalDataset::create(ds.x, ds.time, ds.status, ds.col_names);
  ForestParams params;
  params.n_tree = 30;
  params.seed = 7;
  const Forest forest = fit(ds, params);
  const VIReport perm = permutation_vi(forest, ds, 11);
  CHECK(perm.values[3] == 0.0);
}

TEST_CASE("permutation importance is deterministic in the seed") {
  const SurvivalDataset ds = single_driver_dataset(4, 100, 3);
  ForestParams params;
  params.n_tree = 25;
  params.seed = 13;
  params.n_threads_hint = 3;
  const Forest forest = fit(ds, params);
  const VIReport a = permutation_vi(forest, ds, 17);
  const VIReport b = permutation_vi(forest, ds, 17);
  CHECK(a.values == b.values);
  CHECK(a.baseline_metric == b.baseline_metric);
  CHECK(a.seed == 17);
  const VIReport c = permutation_vi(forest, ds, 18);
  CHECK(a.values != c.values);
}

TEST_CASE("the driving predictor attains maximal importance across seeds") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SurvivalDataset ds = single_driver_dataset(100 + seed, 200, 5);
    ForestParams params;
    params.n_tree = 50;
    params.seed = seed;
    params.n_threads_hint = 2;
    const Forest forest = fit(ds, params);

    const VIReport neg = negation_vi(forest, ds);
    const VIReport perm = permutation_vi(forest, ds, seed);
    const auto argmax = [](const std::vector<double>& v) {
      return std::distance(v.begin(), std::max_element(v.begin(), v.end()));
    };
    CHECK(argmax(neg.values) == 0);
    CHECK(argmax(perm.values) == 0);
    CHECK(neg.values[0] > 0.0);
  }
}

TEST_CASE("anova importance counts significant occurrences") {
  // hand-built forest: predictor 0 occurs 4 times, 3 of them significant
  Forest forest;
  forest.col_names = {"a", "b"};
  forest.params.grow.combo_strategy = ComboStrategy::kFast;
  forest.params.n_tree = 2;
  auto make_tree = [](std::vector<std::pair<double, double>> pvals) {
    // chain of internal nodes, each with cols {0, 1}
    ObliqueTree tree;
    const int n_internal = static_cast<int>(pvals.size());
    for (int i = 0; i < n_internal; ++i) {
      TreeNode node;
      node.combo.cols = {0, 1};
      node.combo.coefs = Eigen::Vector2d(1.0, 1.0);
      node.combo.pvalues = Eigen::Vector2d(pvals[static_cast<std::size_t>(i)].first,
                                           pvals[static_cast<std::size_t>(i)].second);
      node.cutpoint = 0.0;
      node.left = 2 * i + 1;
      node.right = 2 * i + 2;
      tree.nodes.push_back(node);
      TreeNode leaf;
      leaf.km_times = {1.0};
      leaf.km_surv = {0.5};
      leaf.km_chf = {0.5};
      tree.nodes.push_back(leaf);
    }
    tree.nodes.push_back(tree.nodes.back());  // terminal leaf
    return tree;
  };
  forest.trees.push_back(make_tree({{0.005, 0.5}, {0.009, 0.02}}));
  forest.trees.push_back(make_tree({{0.01, 0.011}, {0.5, 0.0001}}));

  const VIReport normalized = anova_vi(forest);
  CHECK(normalized.values[0] == 0.75);  // 0.005, 0.009, 0.01 significant; 0.5 not
  CHECK(normalized.values[1] == 0.25);  // only 0.0001 of {0.5, 0.02, 0.011, 0.0001}

  const VIReport raw = anova_vi(forest, false);
  CHECK(raw.values[0] == 3.0);
  CHECK(raw.values[1] == 1.0);
}

TEST_CASE("anova requires stored p-values") {
  const SurvivalDataset ds = noise_dataset(5, 80, 3);
  ForestParams params;
  params.n_tree = 10;
  params.seed = 19;
  params.grow.combo_strategy = ComboStrategy::kRandom;
  const Forest forest = fit(ds, params);
  CHECK_THROWS_AS(anova_vi(forest), std::invalid_argument);
}

TEST_CASE("anova on a grown forest stays within [0,1] and is a ratio of counts") {
  const SurvivalDataset ds = single_driver_dataset(6, 150, 4);
  ForestParams params;
  params.n_tree = 30;
  params.seed = 23;
  const Forest forest = fit(ds, params);
  const VIReport normalized = anova_vi(forest);
  const VIReport raw = anova_vi(forest, false);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(normalized.values[j] >= 0.0);
    CHECK(normalized.values[j] <= 1.0);
    CHECK(raw.values[j] == std::floor(raw.values[j]));
    CHECK(raw.values[j] >= normalized.values[j] * 0.0);
  }
  // the driver should be significant more often than noise columns
  CHECK(normalized.values[0] > normalized.values[1]);
  CHECK(normalized.values[0] > normalized.values[2]);
  CHECK(normalized.values[0] > normalized.values[3]);
}

TEST_CASE("vi_discrimination") {
  SUBCASE("separated classes give 1") {
    const std::vector<double> vi{0.9, 0.8, 0.1, 0.2};
    const std::vector<int> rel{1, 1, 0, 0};
    CHECK(vi_discrimination(vi, rel) == 1.0);
  }
  SUBCASE("all equal gives 0.5") {
    const std::vector<double> vi{0.3, 0.3, 0.3};
    const std::vector<int> rel{1, 0, 0};
    CHECK(vi_discrimination(vi, rel) == 0.5);
  }
  SUBCASE("single class is an error") {
    const std::vector<double> vi{0.3, 0.4};
    const std::vector<int> rel{1, 1};
    CHECK_THROWS_AS(vi_discrimination(vi, rel), std::invalid_argument);
  }
  SUBCASE("matches brute-force enumeration") {
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> vi(30);
      std::vector<int> rel(30);
      for (int j = 0; j < 30; ++j) {
        vi[static_cast<std::size_t>(j)] = rng.below(8) * 0.125;  // force some ties
        rel[static_cast<std::size_t>(j)] = rng.uniform() < 0.4 ? 1 : 0;
      }
      rel[0] = 1;
      rel[1] = 0;
      CHECK(vi_discrimination(vi, rel) == oracles::vi_discrimination(vi, rel));
    }
  }
}
