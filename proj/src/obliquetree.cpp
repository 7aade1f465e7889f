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

#include "obliqforest/obliquetree.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "obliqforest/coxscore.hpp"

namespace obliqforest {

int GrowParams::resolve_mtry(int p) const {
  if (mtry > 0) return mtry;
  const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(p))));
  return std::max(1, std::min(m, p));
}

void GrowParams::validate(int p) const {
  const int m = resolve_mtry(p);
  if (m < 1 || m > p) throw std::invalid_argument("mtry must be between 1 and the number of predictors");
  if (n_split < 1) throw std::invalid_argument("n_split must be >= 1");
  if (n_retry < 0) throw std::invalid_argument("n_retry must be >= 0");
  if (!(split_min_stat > 0.0)) throw std::invalid_argument("split_min_stat must be > 0");
  if (split_min_obs < 1 || split_min_events < 1 || leaf_min_obs < 1 || leaf_min_events < 1) {
    throw std::invalid_argument("node minima must be >= 1");
  }
  if (leaf_min_obs > split_min_obs || leaf_min_events > split_min_events) {
    throw std::invalid_argument("leaf minima must not exceed split minima");
  }
}

bool is_splittable(double weighted_obs, double weighted_events, const GrowParams& params) {
  return weighted_obs >= params.split_min_obs && weighted_events >= params.split_min_events;
}

namespace {

struct NodeTask {
  int node_id;
  int depth;
  std::vector<int> rows;  // dataset row indices, all with weight > 0
};

struct NodeView {
  Eigen::VectorXd time;
  Eigen::VectorXi status;
  Eigen::VectorXd weights;

  void fill(const SurvivalDataset& ds, const std::vector<double>& w, const std::vector<int>& rows) {
    const int m = static_cast<int>(rows.size());
    time.resize(m);
    status.resize(m);
    weights.resize(m);
    for (int i = 0; i < m; ++i) {
      time[i] = ds.time[rows[static_cast<std::size_t>(i)]];
      status[i] = ds.status[rows[static_cast<std::size_t>(i)]];
      weights[i] = w[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
    }
  }
};

// Coefficients on [-1, 1] applied to sd-standardized columns, expressed on
// the raw predictor scale. Zero-variance columns get coefficient 0.
Eigen::VectorXd random_combo_coefs(const Eigen::MatrixXd& x_node, const Eigen::VectorXd& weights, Rng& rng) {
  const int k = static_cast<int>(x_node.cols());
  const double total = weights.sum();
  Eigen::VectorXd coefs(k);
  for (int q = 0; q < k; ++q) {
    const double u = rng.uniform(-1.0, 1.0);
    const double mean = x_node.col(q).dot(weights) / total;
    const double var = (x_node.col(q).array() - mean).square().matrix().dot(weights) / total;
    coefs[q] = var > 0.0 ? u / std::sqrt(var) : 0.0;
  }
  return coefs;
}

}  // namespace

ObliqueTree grow_tree(const SurvivalDataset& ds, const std::vector<double>& weights, const GrowParams& params,
                      Rng& rng) {
  const int p = ds.p();
  params.validate(p);
  if (static_cast<int>(weights.size()) != ds.n()) throw std::invalid_argument("grow_tree: weights length mismatch");
  const int mtry = params.resolve_mtry(p);

  std::vector<int> inbag;
  double total_weight = 0.0, total_events = 0.0;
  for (int i = 0; i < ds.n(); ++i) {
    const int row = ds.sort_index[static_cast<std::size_t>(i)];
    const double w = weights[static_cast<std::size_t>(row)];
    if (w < 0.0) throw std::invalid_argument("grow_tree: negative weight");
    if (w == 0.0) continue;
    inbag.push_back(row);
    total_weight += w;
    if (ds.status[row] == 1) total_events += w;
  }
  if (total_weight <= 0.0) throw std::invalid_argument("grow_tree: total weight must be positive");
  if (total_events < params.leaf_min_events) throw std::invalid_argument("grow_tree: not enough weighted events");

  ObliqueTree tree;
  tree.nodes.emplace_back();
  std::deque<NodeTask> queue;
  queue.push_back({0, 0, std::move(inbag)});

  NodeView view;
  while (!queue.empty()) {
    NodeTask task = std::move(queue.front());
    queue.pop_front();
    tree.max_depth_reached = std::max(tree.max_depth_reached, task.depth);

    const int m = static_cast<int>(task.rows.size());
    view.fill(ds, weights, task.rows);

    auto make_leaf = [&]() {
      TreeNode& node = tree.nodes[static_cast<std::size_t>(task.node_id)];
      const KaplanMeier km = kaplan_meier({view.time.data(), static_cast<std::size_t>(m)},
                                          {view.status.data(), static_cast<std::size_t>(m)},
                                          {view.weights.data(), static_cast<std::size_t>(m)});
      node.km_times = km.times;
      node.km_surv = km.surv;
      node.km_chf = km.chf;
      ++tree.n_leaves;
    };

    const double node_weight = view.weights.sum();
    double node_events = 0.0;
    for (int i = 0; i < m; ++i) {
      if (view.status[i] == 1) node_events += view.weights[i];
    }
    if (!is_splittable(node_weight, node_events, params)) {
      make_leaf();
      continue;
    }

    bool split_done = false;
    for (int attempt = 0; attempt <= params.n_retry && !split_done; ++attempt) {
      const std::vector<int> cols = rng.sample_indices(p, mtry);
      Eigen::MatrixXd x_node(m, static_cast<int>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        for (int i = 0; i < m; ++i) x_node(i, static_cast<int>(c)) = ds.x(task.rows[static_cast<std::size_t>(i)], cols[c]);
      }

      LinearCombo combo;
      combo.cols = cols;
      try {
        switch (params.combo_strategy) {
          case ComboStrategy::kFast: {
            const CoxStepResult r = newton_raphson_step(x_node, view.time, view.status, view.weights,
                                                        Eigen::VectorXd::Zero(static_cast<int>(cols.size())));
            combo.coefs = r.beta;
            combo.pvalues = r.pvalues;
            break;
          }
          case ComboStrategy::kCph: {
            const CoxStepResult r = newton_raphson_fit(x_node, view.time, view.status, view.weights, 20, 1e-9);
            combo.coefs = r.beta;
            combo.pvalues = r.pvalues;
            break;
          }
          case ComboStrategy::kRandom:
            combo.coefs = random_combo_coefs(x_node, view.weights, rng);
            break;
        }
      } catch (const std::runtime_error&) {
        continue;  // collinear sample: retry with fresh columns
      }
      if (combo.coefs.isZero(0.0)) continue;

      const Eigen::VectorXd eta = x_node * combo.coefs;
      const std::span<const double> eta_span{eta.data(), static_cast<std::size_t>(m)};
      const std::vector<double> candidates =
          sample_cutpoints(eta_span, {view.weights.data(), static_cast<std::size_t>(m)},
                           {view.status.data(), static_cast<std::size_t>(m)}, params.n_split,
                           static_cast<double>(params.split_min_obs), static_cast<double>(params.split_min_events), rng);
      if (candidates.empty()) continue;

      const SplitCandidate best =
          best_cutpoint(eta_span, {view.time.data(), static_cast<std::size_t>(m)},
                        {view.status.data(), static_cast<std::size_t>(m)},
                        {view.weights.data(), static_cast<std::size_t>(m)}, candidates);
      if (best.stat < params.split_min_stat) continue;

      // accept the split
      const int left_id = static_cast<int>(tree.nodes.size());
      const int right_id = left_id + 1;
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& node = tree.nodes[static_cast<std::size_t>(task.node_id)];
      node.combo = std::move(combo);
      node.cutpoint = best.cutpoint;
      node.stat = best.stat;
      node.left = left_id;
      node.right = right_id;

      std::vector<int> left_rows, right_rows;
      for (int i = 0; i < m; ++i) {
        (eta[i] <= best.cutpoint ? left_rows : right_rows).push_back(task.rows[static_cast<std::size_t>(i)]);
      }
      queue.push_back({left_id, task.depth + 1, std::move(left_rows)});
      queue.push_back({right_id, task.depth + 1, std::move(right_rows)});
      split_done = true;
    }
    if (!split_done) make_leaf();
  }
  return tree;
}

int route_to_leaf(const ObliqueTree& tree, std::span<const double> x, int negate_col) {
  int id = 0;
  const TreeNode* node = &tree.nodes[0];
  while (!node->is_leaf()) {
    double eta = 0.0;
    for (std::size_t c = 0; c < node->combo.cols.size(); ++c) {
      const int col = node->combo.cols[c];
      const double coef = node->combo.coefs[static_cast<Eigen::Index>(c)];
      eta += (col == negate_col ? -coef : coef) * x[static_cast<std::size_t>(col)];
    }
    id = eta <= node->cutpoint ? node->left : node->right;
    node = &tree.nodes[static_cast<std::size_t>(id)];
  }
  return id;
}

std::vector<double> predict_tree_survival(const ObliqueTree& tree, std::span<const double> x,
                                          std::span<const double> horizon_times) {
  for (const double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("predict_tree_survival: non-finite predictor value");
  }
  const TreeNode& leaf = tree.nodes[static_cast<std::size_t>(route_to_leaf(tree, x))];
  const StepCurve curve{leaf.km_times, leaf.km_surv, 1.0};
  std::vector<double> out(horizon_times.size());
  for (std::size_t i = 0; i < horizon_times.size(); ++i) out[i] = curve.at(horizon_times[i]);
  return out;
}

}  // namespace obliqforest
