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

#include "obliqforest/forest.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "obliqforest/threading.hpp"
#include "obliqforest/types.hpp"

namespace obliqforest {

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kMaxBootstrapRedraws = 1000;

// A bootstrap draw must carry at least leaf_min_events weighted events for
// the tree to be growable; redraw (deterministically, same stream) until it
// does.
std::vector<double> draw_tree_weights(const SurvivalDataset& ds, const ForestParams& params, Rng& rng) {
  for (int attempt = 0; attempt < kMaxBootstrapRedraws; ++attempt) {
    std::vector<double> w = bootstrap_weights(ds.n(), params.bootstrap_mode, rng);
    double events = 0.0;
    for (int i = 0; i < ds.n(); ++i) {
      if (ds.status[i] == 1) events += w[static_cast<std::size_t>(i)];
    }
    if (events >= params.grow.leaf_min_events) return w;
  }
  throw std::runtime_error("bootstrap draws never produced enough weighted events");
}

void check_query(const Forest& forest, const Eigen::MatrixXd& x_new) {
  if (x_new.cols() != forest.p()) {
    throw std::invalid_argument("query column count " + std::to_string(x_new.cols()) + " does not match model (" +
                                std::to_string(forest.p()) + ")");
  }
  if (!x_new.allFinite()) throw std::invalid_argument("non-finite query value");
}

// chf summed over the training event grid, cached per leaf at fit/load time
// so mortality prediction is a single lookup per (row, tree)
void fill_leaf_grid_sums(ObliqueTree& tree, const std::vector<double>& grid) {
  for (auto& node : tree.nodes) {
    if (!node.is_leaf()) continue;
    const StepCurve chf{node.km_times, node.km_chf, 0.0};
    double sum = 0.0;
    for (const double t : grid) sum += chf.at(t);
    node.leaf_chf_grid_sum = sum;
  }
}

std::string strategy_name(ComboStrategy s) {
  switch (s) {
    case ComboStrategy::kFast: return "fast";
    case ComboStrategy::kCph: return "cph";
    case ComboStrategy::kRandom: return "random";
  }
  return "fast";
}

ComboStrategy strategy_from(const std::string& s) {
  if (s == "fast") return ComboStrategy::kFast;
  if (s == "cph") return ComboStrategy::kCph;
  if (s == "random") return ComboStrategy::kRandom;
  throw std::runtime_error("malformed model: unknown combo strategy '" + s + "'");
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string checksum_hex(const std::string& text) {
  static const char* digits = "0123456789abcdef";
  const std::uint64_t h = fnv1a(text);
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(15 - i)] = digits[(h >> (4 * i)) & 0xF];
  return out;
}

}  // namespace

void ForestParams::validate(int p) const {
  if (n_tree < 1) throw std::invalid_argument("n_tree must be >= 1");
  grow.validate(p);
}

std::vector<double> bootstrap_weights(int n, BootstrapMode mode, Rng& rng) {
  if (n < 1) throw std::invalid_argument("bootstrap_weights: n must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  if (mode == BootstrapMode::kMultinomial) {
    for (int i = 0; i < n; ++i) w[rng.below(static_cast<std::uint64_t>(n))] += 1.0;
  } else {
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = static_cast<double>(rng.below(11));
  }
  return w;
}

Forest fit(const SurvivalDataset& ds, ForestParams params) {
  params.validate(ds.p());
  params.grow.mtry = params.grow.resolve_mtry(ds.p());

  Forest forest;
  forest.params = params;
  forest.col_names = ds.col_names;
  forest.train_event_times = event_times(ds);
  forest.trees.resize(static_cast<std::size_t>(params.n_tree));
  forest.inbag_weights.resize(static_cast<std::size_t>(params.n_tree));

  parallel_for(static_cast<std::size_t>(params.n_tree), params.n_threads_hint, [&](std::size_t t) {
    Rng weights_rng = Rng::stream(params.seed, kStreamBootstrap, t);
    std::vector<double> w = draw_tree_weights(ds, params, weights_rng);
    Rng grow_rng = Rng::stream(params.seed, kStreamGrow, t);
    ObliqueTree tree = grow_tree(ds, w, params.grow, grow_rng);
    fill_leaf_grid_sums(tree, forest.train_event_times);
    forest.trees[t] = std::move(tree);
    forest.inbag_weights[t] = std::move(w);
  });
  return forest;
}

Eigen::MatrixXd predict_survival(const Forest& forest, const Eigen::MatrixXd& x_new,
                                 std::span<const double> horizon_times) {
  check_query(forest, x_new);
  const int q = static_cast<int>(x_new.rows());
  const int h = static_cast<int>(horizon_times.size());
  Eigen::MatrixXd out(q, h);
  const double n_tree = static_cast<double>(forest.trees.size());

  parallel_for(static_cast<std::size_t>(q), forest.params.n_threads_hint, [&](std::size_t i) {
    std::vector<double> row(static_cast<std::size_t>(x_new.cols()));
    for (Eigen::Index j = 0; j < x_new.cols(); ++j) row[static_cast<std::size_t>(j)] = x_new(static_cast<Eigen::Index>(i), j);
    std::vector<double> acc(static_cast<std::size_t>(h), 0.0);
    for (const auto& tree : forest.trees) {
      const TreeNode& leaf = tree.nodes[static_cast<std::size_t>(route_to_leaf(tree, row))];
      const StepCurve curve{leaf.km_times, leaf.km_surv, 1.0};
      for (int c = 0; c < h; ++c) acc[static_cast<std::size_t>(c)] += curve.at(horizon_times[static_cast<std::size_t>(c)]);
    }
    for (int c = 0; c < h; ++c) out(static_cast<Eigen::Index>(i), c) = acc[static_cast<std::size_t>(c)] / n_tree;
  });
  return out;
}

Eigen::VectorXd predict_mortality(const Forest& forest, const Eigen::MatrixXd& x_new) {
  check_query(forest, x_new);
  const int q = static_cast<int>(x_new.rows());
  Eigen::VectorXd out(q);
  const double n_tree = static_cast<double>(forest.trees.size());

  parallel_for(static_cast<std::size_t>(q), forest.params.n_threads_hint, [&](std::size_t i) {
    std::vector<double> row(static_cast<std::size_t>(x_new.cols()));
    for (Eigen::Index j = 0; j < x_new.cols(); ++j) row[static_cast<std::size_t>(j)] = x_new(static_cast<Eigen::Index>(i), j);
    double acc = 0.0;
    for (const auto& tree : forest.trees) {
      acc += tree.nodes[static_cast<std::size_t>(route_to_leaf(tree, row))].leaf_chf_grid_sum;
    }
    out[static_cast<Eigen::Index>(i)] = acc / n_tree;
  });
  return out;
}

std::vector<std::vector<double>> regenerate_inbag_weights(const Forest& forest, const SurvivalDataset& ds) {
  std::vector<std::vector<double>> inbag(forest.trees.size());
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    Rng rng = Rng::stream(forest.params.seed, kStreamBootstrap, t);
    inbag[t] = draw_tree_weights(ds, forest.params, rng);
  }
  return inbag;
}

void ensure_inbag_weights(Forest& forest, const SurvivalDataset& ds) {
  if (forest.inbag_weights.empty()) forest.inbag_weights = regenerate_inbag_weights(forest, ds);
}

OobResult oob_predict(const Forest& forest, const SurvivalDataset& ds, std::span<const double> horizon_times) {
  std::vector<std::vector<double>> local;
  const std::vector<std::vector<double>>* inbag = &forest.inbag_weights;
  if (forest.inbag_weights.empty()) {
    local = regenerate_inbag_weights(forest, ds);
    inbag = &local;
  }
  if (static_cast<int>((*inbag)[0].size()) != ds.n()) {
    throw std::invalid_argument("oob_predict: dataset row count does not match training rows");
  }

  const int n = ds.n();
  const int h = static_cast<int>(horizon_times.size());
  OobResult res;
  res.survival.setConstant(n, h, std::numeric_limits<double>::quiet_NaN());
  res.mortality.setConstant(n, std::numeric_limits<double>::quiet_NaN());
  res.oob_counts.assign(static_cast<std::size_t>(n), 0);

  parallel_for(static_cast<std::size_t>(n), forest.params.n_threads_hint, [&](std::size_t i) {
    std::vector<double> row(static_cast<std::size_t>(ds.p()));
    for (int j = 0; j < ds.p(); ++j) row[static_cast<std::size_t>(j)] = ds.x(static_cast<Eigen::Index>(i), j);
    std::vector<double> acc(static_cast<std::size_t>(h), 0.0);
    double mort = 0.0;
    int count = 0;
    for (std::size_t t = 0; t < forest.trees.size(); ++t) {
      if ((*inbag)[t][i] != 0.0) continue;
      const TreeNode& leaf = forest.trees[t].nodes[static_cast<std::size_t>(route_to_leaf(forest.trees[t], row))];
      const StepCurve curve{leaf.km_times, leaf.km_surv, 1.0};
      for (int c = 0; c < h; ++c) acc[static_cast<std::size_t>(c)] += curve.at(horizon_times[static_cast<std::size_t>(c)]);
      mort += leaf.leaf_chf_grid_sum;
      ++count;
    }
    res.oob_counts[i] = count;
    if (count > 0) {
      for (int c = 0; c < h; ++c) res.survival(static_cast<Eigen::Index>(i), c) = acc[static_cast<std::size_t>(c)] / count;
      res.mortality[static_cast<Eigen::Index>(i)] = mort / count;
    }
  });
  return res;
}

namespace {

using nlohmann::json;

json params_to_json(const ForestParams& p) {
  return json{{"n_tree", p.n_tree},
              {"seed", p.seed},
              {"bootstrap_mode", p.bootstrap_mode == BootstrapMode::kMultinomial ? "multinomial" : "uniform_0_10"},
              {"grow",
               json{{"mtry", p.grow.mtry},
                    {"n_split", p.grow.n_split},
                    {"n_retry", p.grow.n_retry},
                    {"split_min_stat", p.grow.split_min_stat},
                    {"split_min_obs", p.grow.split_min_obs},
                    {"split_min_events", p.grow.split_min_events},
                    {"leaf_min_obs", p.grow.leaf_min_obs},
                    {"leaf_min_events", p.grow.leaf_min_events},
                    {"combo_strategy", strategy_name(p.grow.combo_strategy)}}}};
}

ForestParams params_from_json(const json& j) {
  ForestParams p;
  p.n_tree = j.at("n_tree").get<int>();
  p.seed = j.at("seed").get<std::uint64_t>();
  const std::string mode = j.at("bootstrap_mode").get<std::string>();
  if (mode == "multinomial") {
    p.bootstrap_mode = BootstrapMode::kMultinomial;
  } else if (mode == "uniform_0_10") {
    p.bootstrap_mode = BootstrapMode::kUniform0_10;
  } else {
    throw std::runtime_error("malformed model: unknown bootstrap mode '" + mode + "'");
  }
  const json& g = j.at("grow");
  p.grow.mtry = g.at("mtry").get<int>();
  p.grow.n_split = g.at("n_split").get<int>();
  p.grow.n_retry = g.at("n_retry").get<int>();
  p.grow.split_min_stat = g.at("split_min_stat").get<double>();
  p.grow.split_min_obs = g.at("split_min_obs").get<int>();
  p.grow.split_min_events = g.at("split_min_events").get<int>();
  p.grow.leaf_min_obs = g.at("leaf_min_obs").get<int>();
  p.grow.leaf_min_events = g.at("leaf_min_events").get<int>();
  p.grow.combo_strategy = strategy_from(g.at("combo_strategy").get<std::string>());
  return p;
}

json tree_to_json(const ObliqueTree& tree) {
  json nodes = json::array();
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) {
      nodes.push_back(json{{"times", node.km_times}, {"surv", node.km_surv}, {"chf", node.km_chf}});
    } else {
      std::vector<double> coefs(node.combo.coefs.data(), node.combo.coefs.data() + node.combo.coefs.size());
      std::vector<double> pv(node.combo.pvalues.data(), node.combo.pvalues.data() + node.combo.pvalues.size());
      nodes.push_back(json{{"cols", node.combo.cols},
                           {"coefs", coefs},
                           {"pvalues", pv},
                           {"cutpoint", node.cutpoint},
                           {"stat", node.stat},
                           {"left", node.left},
                           {"right", node.right}});
    }
  }
  return json{{"nodes", std::move(nodes)}};
}

ObliqueTree tree_from_json(const json& j) {
  ObliqueTree tree;
  const json& nodes = j.at("nodes");
  tree.nodes.resize(nodes.size());
  int max_child = -1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& nj = nodes[i];
    TreeNode& node = tree.nodes[i];
    if (nj.contains("left")) {
      node.combo.cols = nj.at("cols").get<std::vector<int>>();
      const auto coefs = nj.at("coefs").get<std::vector<double>>();
      const auto pv = nj.at("pvalues").get<std::vector<double>>();
      node.combo.coefs = Eigen::Map<const Eigen::VectorXd>(coefs.data(), static_cast<Eigen::Index>(coefs.size()));
      node.combo.pvalues = Eigen::Map<const Eigen::VectorXd>(pv.data(), static_cast<Eigen::Index>(pv.size()));
      node.cutpoint = nj.at("cutpoint").get<double>();
      node.stat = nj.at("stat").get<double>();
      node.left = nj.at("left").get<int>();
      node.right = nj.at("right").get<int>();
      max_child = std::max({max_child, node.left, node.right});
    } else {
      node.km_times = nj.at("times").get<std::vector<double>>();
      node.km_surv = nj.at("surv").get<std::vector<double>>();
      node.km_chf = nj.at("chf").get<std::vector<double>>();
      ++tree.n_leaves;
    }
  }
  if (max_child >= static_cast<int>(tree.nodes.size())) throw std::runtime_error("malformed model: child id out of range");
  return tree;
}

}  // namespace

std::string to_model_string(const Forest& forest) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["params"] = params_to_json(forest.params);
  doc["col_names"] = forest.col_names;
  doc["train_event_times"] = forest.train_event_times;
  json trees = json::array();
  for (const auto& tree : forest.trees) trees.push_back(tree_to_json(tree));
  doc["trees"] = std::move(trees);
  doc["checksum"] = checksum_hex(doc.dump());
  return doc.dump(1);
}

Forest from_model_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception&) {
    throw std::runtime_error("malformed model file");
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw IoError("unsupported version: schema_version " + std::to_string(version));
    }
    const std::string stored = doc.at("checksum").get<std::string>();
    doc.erase("checksum");
    if (checksum_hex(doc.dump()) != stored) throw std::runtime_error("model checksum failure");

    Forest forest;
    forest.params = params_from_json(doc.at("params"));
    forest.col_names = doc.at("col_names").get<std::vector<std::string>>();
    forest.train_event_times = doc.at("train_event_times").get<std::vector<double>>();
    if (static_cast<int>(doc.at("trees").size()) != forest.params.n_tree) {
      throw std::runtime_error("malformed model: tree count mismatch");
    }
    for (const auto& tj : doc.at("trees")) {
      ObliqueTree tree = tree_from_json(tj);
      fill_leaf_grid_sums(tree, forest.train_event_times);
      forest.trees.push_back(std::move(tree));
    }
    return forest;
  } catch (const json::exception&) {
    throw std::runtime_error("malformed model file");
  }
}

void save(const Forest& forest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << to_model_string(forest) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

Forest load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_model_string(text);
}

}  // namespace obliqforest
