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

#include "obliqforest/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "obliqforest/bench.hpp"
#include "obliqforest/csv.hpp"
#include "obliqforest/forest.hpp"
#include "obliqforest/importance.hpp"
#include "obliqforest/metrics.hpp"
#include "obliqforest/simgen.hpp"
#include "obliqforest/survdata.hpp"
#include "obliqforest/types.hpp"

namespace obliqforest {

namespace {

int default_threads() {
  if (const char* env = std::getenv("OBLIQFOREST_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 0;  // resolve to hardware concurrency
}

ComboStrategy parse_strategy(const std::string& s) {
  if (s == "fast") return ComboStrategy::kFast;
  if (s == "cph") return ComboStrategy::kCph;
  if (s == "random") return ComboStrategy::kRandom;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected fast|cph|random)");
}

BootstrapMode parse_bootstrap(const std::string& s) {
  if (s == "multinomial") return BootstrapMode::kMultinomial;
  if (s == "uniform010") return BootstrapMode::kUniform0_10;
  throw std::invalid_argument("unknown bootstrap mode '" + s + "' (expected multinomial|uniform010)");
}

ViTechnique parse_technique(const std::string& s) {
  if (s == "negation") return ViTechnique::kNegation;
  if (s == "permutation") return ViTechnique::kPermutation;
  if (s == "anova") return ViTechnique::kAnova;
  throw std::invalid_argument("unknown technique '" + s + "' (expected negation|permutation|anova)");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Shared hyperparameter flags, attached to every model-building subcommand.
struct HyperFlags {
  int n_tree = 500;
  int mtry = 0;  // 0 = auto
  int n_split = 5;
  int n_retry = 3;
  double split_min_stat = 3.841459;
  int split_min_obs = 10;
  int split_min_events = 5;
  int leaf_min_obs = 5;
  int leaf_min_events = 1;
  std::string strategy = "fast";
  std::string bootstrap = "multinomial";
  std::uint64_t seed = 0;
  int threads = default_threads();
  bool mtry_given = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n-tree", n_tree, "number of trees (default 500)");
    cmd->add_option("--mtry", mtry, "predictors sampled per node (default round(sqrt(p)))")
        ->each([this](const std::string&) { mtry_given = true; });
    cmd->add_option("--n-split", n_split, "cutpoints assessed per linear combination (default 5)");
    cmd->add_option("--n-retry", n_retry, "retries with fresh columns before a node becomes a leaf (default 3)");
    cmd->add_option("--split-min-stat", split_min_stat, "log-rank statistic required to split (default 3.841459)");
    cmd->add_option("--split-min-obs", split_min_obs, "weighted observations required to split (default 10)");
    cmd->add_option("--split-min-events", split_min_events, "weighted events required to split (default 5)");
    cmd->add_option("--leaf-min-obs", leaf_min_obs, "minimum weighted observations in a leaf (default 5)");
    cmd->add_option("--leaf-min-events", leaf_min_events, "minimum weighted events in a leaf (default 1)");
    cmd->add_option("--strategy", strategy, "linear combination strategy: fast|cph|random (default fast)");
    cmd->add_option("--bootstrap", bootstrap, "bootstrap weights: multinomial|uniform010 (default multinomial)");
    cmd->add_option("--seed", seed, "seed for all randomness (default 0)");
    cmd->add_option("--threads", threads, "worker threads (default $OBLIQFOREST_THREADS or all cores)");
  }

  ForestParams to_params() const {
    if (mtry_given && mtry < 1) throw std::invalid_argument("mtry must be >= 1");
    ForestParams params;
    params.n_tree = n_tree;
    params.seed = seed;
    params.bootstrap_mode = parse_bootstrap(bootstrap);
    params.n_threads_hint = threads;
    params.grow.mtry = mtry;
    params.grow.n_split = n_split;
    params.grow.n_retry = n_retry;
    params.grow.split_min_stat = split_min_stat;
    params.grow.split_min_obs = split_min_obs;
    params.grow.split_min_events = split_min_events;
    params.grow.leaf_min_obs = leaf_min_obs;
    params.grow.leaf_min_events = leaf_min_events;
    params.grow.combo_strategy = parse_strategy(strategy);
    return params;
  }

  std::string echo() const {
    std::ostringstream os;
    os << "n_tree=" << n_tree << " mtry=" << (mtry_given ? std::to_string(mtry) : std::string("auto"))
       << " n_split=" << n_split << " n_retry=" << n_retry << " split_min_stat=" << format_double(split_min_stat)
       << " strategy=" << strategy << " bootstrap=" << bootstrap << " seed=" << seed;
    return os.str();
  }
};

// Aligns a feature CSV to the model's training columns by name; missing or
// unknown columns are hard errors. outcome columns named by time/status are
// dropped first (lets a training CSV be scored directly).
Eigen::MatrixXd load_features(const std::string& path, const std::vector<std::string>& col_names,
                              const std::string& time_col, const std::string& status_col) {
  const CsvTable table = read_csv(path);
  std::map<std::string, int> position;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    const std::string& name = table.header[j];
    if (name == time_col || name == status_col) continue;
    if (!position.emplace(name, static_cast<int>(j)).second) {
      throw std::invalid_argument("duplicate column name: " + name);
    }
  }

  std::string missing, unknown;
  for (const auto& name : col_names) {
    if (position.find(name) == position.end()) missing += (missing.empty() ? "" : ", ") + name;
  }
  for (const auto& [name, idx] : position) {
    (void)idx;
    if (std::find(col_names.begin(), col_names.end(), name) == col_names.end()) {
      unknown += (unknown.empty() ? "" : ", ") + name;
    }
  }
  if (!missing.empty()) throw std::invalid_argument("missing model columns: " + missing);
  if (!unknown.empty()) throw std::invalid_argument("unknown columns not in model: " + unknown);

  Eigen::MatrixXd x(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(col_names.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < col_names.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          table.rows[i][static_cast<std::size_t>(position.at(col_names[j]))];
    }
  }
  return x;
}

int cmd_fit(const std::string& data, const std::string& time_col, const std::string& status_col,
            const std::string& out, const HyperFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const SurvivalDataset ds = load_csv(data, time_col, status_col);
  Forest forest = fit(ds, flags.to_params());
  save(forest, out);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int events = 0;
  for (int i = 0; i < ds.n(); ++i) events += ds.status[i];
  std::cout << "fit: n=" << ds.n() << " p=" << ds.p() << " events=" << events << " n_tree=" << forest.params.n_tree
            << " elapsed=" << format_double(secs) << "s -> " << out << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data, const std::string& out,
                std::vector<double> times, const std::string& time_col, const std::string& status_col, int threads) {
  Forest forest = load(model_path);
  forest.params.n_threads_hint = threads;
  const Eigen::MatrixXd x = load_features(data, forest.col_names, time_col, status_col);

  if (times.empty()) {
    const auto& ev = forest.train_event_times;
    if (ev.empty()) throw std::runtime_error("model has no training event times");
    times = {quantile_type7(ev, 0.25), quantile_type7(ev, 0.5), quantile_type7(ev, 0.75)};
  }
  std::sort(times.begin(), times.end());

  const Eigen::VectorXd mortality = predict_mortality(forest, x);
  const Eigen::MatrixXd surv = predict_survival(forest, x, times);

  std::vector<std::string> header{"mortality"};
  for (const double t : times) header.push_back("surv_" + format_double(t));
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.push_back(mortality[i]);
    for (Eigen::Index c = 0; c < surv.cols(); ++c) row.push_back(surv(i, c));
  }
  std::ostringstream echo;
  echo << "predict model=" << model_path << " data=" << data << " times=";
  for (std::size_t i = 0; i < times.size(); ++i) echo << (i ? "," : "") << format_double(times[i]);
  write_csv(out, echo.str(), header, rows);
  std::cout << "predict: " << x.rows() << " rows -> " << out << "\n";
  return 0;
}

int cmd_importance(const std::string& model_path, const std::string& data, const std::string& time_col,
                   const std::string& status_col, const std::string& technique_name, const std::string& out,
                   std::uint64_t seed, int threads, bool anova_raw) {
  Forest forest = load(model_path);
  forest.params.n_threads_hint = threads;
  const ViTechnique technique = parse_technique(technique_name);

  VIReport report;
  if (technique == ViTechnique::kAnova) {
    report = anova_vi(forest, !anova_raw);
  } else {
    if (data.empty()) throw std::invalid_argument("--data is required for negation/permutation importance");
    const SurvivalDataset ds = load_csv(data, time_col, status_col);
    ensure_inbag_weights(forest, ds);
    report = technique == ViTechnique::kNegation ? negation_vi(forest, ds) : permutation_vi(forest, ds, seed);
  }

  std::vector<std::string> header{"name", "vi"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < forest.col_names.size(); ++j) {
    rows.push_back({forest.col_names[j], format_double(report.values[j])});
  }
  std::ostringstream echo;
  echo << "importance technique=" << technique_name << " model=" << model_path << " seed=" << seed;
  if (report.has_baseline) echo << " baseline_harrell_c=" << format_double(report.baseline_metric);
  write_csv_strings(out, echo.str(), header, rows);
  std::cout << "importance: " << forest.col_names.size() << " predictors -> " << out << "\n";
  return 0;
}

int cmd_evaluate(const std::string& model_path, const std::string& data, const std::string& time_col,
                 const std::string& status_col, const std::string& train_data, const std::string& out, int threads) {
  Forest forest = load(model_path);
  forest.params.n_threads_hint = threads;
  SurvivalDataset test = load_csv(data, time_col, status_col);
  if (test.col_names != forest.col_names) {
    // accept reordered columns; anything else is a mismatch
    Eigen::MatrixXd x(test.n(), forest.p());
    for (int j = 0; j < forest.p(); ++j) {
      const auto it = std::find(test.col_names.begin(), test.col_names.end(), forest.col_names[static_cast<std::size_t>(j)]);
      if (it == test.col_names.end()) {
        throw std::invalid_argument("missing model columns: " + forest.col_names[static_cast<std::size_t>(j)]);
      }
      x.col(j) = test.x.col(it - test.col_names.begin());
    }
    if (test.p() != forest.p()) throw std::invalid_argument("test columns do not match model columns");
    test = SurvivalDataset::create(std::move(x), test.time, test.status, forest.col_names);
  }

  StepCurve train_km;
  bool have_reference = false;
  double horizon;
  if (!train_data.empty()) {
    const SurvivalDataset train = load_csv(train_data, time_col, status_col);
    const std::vector<double> unit(static_cast<std::size_t>(train.n()), 1.0);
    train_km = kaplan_meier({train.time.data(), static_cast<std::size_t>(train.n())},
                            {train.status.data(), static_cast<std::size_t>(train.n())}, unit)
                   .surv_curve();
    have_reference = true;
    horizon = quantile_type7(event_times(train), 0.5);
  } else {
    horizon = quantile_type7(forest.train_event_times, 0.5);
  }

  EvalResult eval =
      evaluate_forest(forest, test.x, test.time, test.status, have_reference ? &train_km : nullptr, horizon);
  eval.scale_by_100 = true;  // stdout presentation below; the CSV stays raw

  std::vector<std::string> header{"metric", "time", "value"};
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"harrell_c", "", format_double(eval.harrell)});
  rows.push_back({"td_c", format_double(eval.td_horizon), format_double(eval.td_c)});
  rows.push_back({"ibs", "", format_double(eval.ibs)});
  rows.push_back({"t1", "", format_double(eval.t1)});
  rows.push_back({"t2", "", format_double(eval.t2)});
  if (have_reference) {
    rows.push_back({"ibs_reference", "", format_double(eval.ibs_reference)});
    rows.push_back({"ipa", "", format_double(eval.ipa)});
  }
  for (std::size_t c = 0; c < eval.bs_times.size(); ++c) {
    rows.push_back({"bs", format_double(eval.bs_times[c]), format_double(eval.bs_values[c])});
  }
  std::ostringstream echo;
  echo << "evaluate model=" << model_path << " data=" << data
       << (have_reference ? " train=" + train_data : std::string(" train=<none>"));
  write_csv_strings(out, echo.str(), header, rows);
  const double scale = eval.scale_by_100 ? 100.0 : 1.0;
  std::cout << "evaluate: harrell_c*100=" << format_double(scale * eval.harrell)
            << " td_c*100=" << format_double(scale * eval.td_c)
            << (have_reference ? " ipa*100=" + format_double(scale * eval.ipa) : std::string()) << " -> " << out
            << "\n";
  return 0;
}

int cmd_simulate(const SimConfig& config, const std::string& out, std::string relevance_out) {
  if (relevance_out.empty()) {
    relevance_out = out;
    const std::size_t dot = relevance_out.rfind(".csv");
    if (dot != std::string::npos && dot == relevance_out.size() - 4) relevance_out.erase(dot);
    relevance_out += "_relevance.csv";
  }
  const SimData sim = simulate(config);
  std::ostringstream echo;
  echo << "simulate n=" << config.n << " n_per_class=" << config.n_per_class
       << " max_corr=" << format_double(config.max_corr) << " hazard_ratio=" << format_double(config.hazard_ratio_per_sd)
       << " censoring=" << format_double(config.target_censoring) << " seed=" << config.seed;
  write_sim_csv(sim, out, relevance_out, echo.str());
  std::cout << "simulate: n=" << sim.ds.n() << " p=" << sim.ds.p()
            << " censored=" << format_double(sim.realized_censoring) << " -> " << out << " + " << relevance_out << "\n";
  return 0;
}

int cmd_bench_cv(const std::string& data, const std::string& time_col, const std::string& status_col,
                 const std::string& out, const std::string& learners_arg, int runs, const HyperFlags& flags) {
  const SurvivalDataset ds = load_csv(data, time_col, status_col);
  std::vector<ComboStrategy> learners;
  for (const auto& name : split_commas(learners_arg)) learners.push_back(parse_strategy(name));

  const std::vector<BenchRow> rows = monte_carlo_cv(ds, learners, runs, flags.seed, flags.to_params(), data);

  std::vector<std::string> header{"task", "learner", "run", "failed", "ipa", "td_c", "harrell_c", "fit_ms", "predict_ms", "seed"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({row.task, row.learner, std::to_string(row.run), row.failed ? "1" : "0", format_double(row.ipa),
                     format_double(row.td_c), format_double(row.harrell), format_double(row.fit_ms),
                     format_double(row.predict_ms), std::to_string(row.seed)});
  }
  write_csv_strings(out, "bench cv data=" + data + " runs=" + std::to_string(runs) + " learners=" + learners_arg +
                             " " + flags.echo(),
                    header, cells);
  std::cout << "bench cv: " << rows.size() << " rows -> " << out << "\n";
  return 0;
}

int cmd_bench_vi(const std::string& grid_arg, const std::string& techniques_arg, int reps, const std::string& out,
                 const HyperFlags& flags, int n_override, double corr_override) {
  std::vector<SimConfig> grid;
  if (grid_arg == "default") {
    for (const double corr : {0.0, 0.15, 0.3}) {
      for (const int n : {500, 1000, 2500}) {
        SimConfig config;
        config.n = n;
        config.max_corr = corr;
        grid.push_back(config);
      }
    }
  } else if (grid_arg == "single") {
    SimConfig config;
    config.n = n_override;
    config.max_corr = corr_override;
    grid.push_back(config);
  } else {
    throw std::invalid_argument("unknown grid '" + grid_arg + "' (expected default|single)");
  }

  std::vector<ViTechnique> techniques;
  for (const auto& name : split_commas(techniques_arg)) techniques.push_back(parse_technique(name));

  const std::vector<ViBenchRow> rows = vi_benchmark(grid, techniques, reps, flags.seed, flags.to_params());

  std::vector<std::string> header{"n", "max_corr", "technique", "var_class", "c_stat", "rep"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({std::to_string(row.n), format_double(row.max_corr), row.technique, row.var_class,
                     format_double(row.c_stat), std::to_string(row.rep)});
  }
  write_csv_strings(out, "bench vi grid=" + grid_arg + " techniques=" + techniques_arg + " reps=" +
                             std::to_string(reps) + " " + flags.echo(),
                    header, cells);
  std::cout << "bench vi: " << rows.size() << " rows -> " << out << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"oblique random survival forests: fast Cox-scoring splits, negation importance, IPCW evaluation"};
  app.require_subcommand(1);

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "train a forest on a survival CSV");
  std::string fit_data, fit_time = "time", fit_status = "status", fit_out;
  HyperFlags fit_flags;
  fit_cmd->add_option("--data", fit_data, "training CSV")->required();
  fit_cmd->add_option("--time", fit_time, "time column name")->required();
  fit_cmd->add_option("--status", fit_status, "status column name (0/1)")->required();
  fit_cmd->add_option("--out", fit_out, "output model file")->required();
  fit_flags.attach(fit_cmd);

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "predict mortality and survival probabilities");
  std::string pr_model, pr_data, pr_out, pr_time, pr_status;
  std::vector<double> pr_times;
  int pr_threads = default_threads();
  predict_cmd->add_option("--model", pr_model, "model file")->required();
  predict_cmd->add_option("--data", pr_data, "feature CSV (columns must match the model)")->required();
  predict_cmd->add_option("--out", pr_out, "output CSV")->required();
  predict_cmd->add_option("--times", pr_times, "survival horizons (default: training event-time quartiles)")
      ->delimiter(',');
  predict_cmd->add_option("--time", pr_time, "outcome column to ignore if present");
  predict_cmd->add_option("--status", pr_status, "outcome column to ignore if present");
  predict_cmd->add_option("--threads", pr_threads, "worker threads");

  // importance
  auto* imp_cmd = app.add_subcommand("importance", "variable importance for a trained model");
  std::string imp_model, imp_data, imp_time = "time", imp_status = "status", imp_technique = "negation", imp_out;
  std::uint64_t imp_seed = 0;
  int imp_threads = default_threads();
  bool imp_anova_raw = false;
  imp_cmd->add_option("--model", imp_model, "model file")->required();
  imp_cmd->add_option("--data", imp_data, "training CSV (required for negation/permutation)");
  imp_cmd->add_option("--time", imp_time, "time column name");
  imp_cmd->add_option("--status", imp_status, "status column name");
  imp_cmd->add_option("--technique", imp_technique, "negation|permutation|anova (default negation)");
  imp_cmd->add_option("--out", imp_out, "output CSV")->required();
  imp_cmd->add_option("--seed", imp_seed, "seed (permutation)");
  imp_cmd->add_option("--threads", imp_threads, "worker threads");
  imp_cmd->add_flag("--anova-raw", imp_anova_raw, "report raw significant-occurrence counts instead of fractions");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "IPCW metrics for a trained model on a test CSV");
  std::string ev_model, ev_data, ev_time = "time", ev_status = "status", ev_train, ev_out;
  int ev_threads = default_threads();
  eval_cmd->add_option("--model", ev_model, "model file")->required();
  eval_cmd->add_option("--data", ev_data, "test CSV")->required();
  eval_cmd->add_option("--time", ev_time, "time column name");
  eval_cmd->add_option("--status", ev_status, "status column name");
  eval_cmd->add_option("--train", ev_train, "training CSV (enables the IPA reference)");
  eval_cmd->add_option("--out", ev_out, "output CSV")->required();
  eval_cmd->add_option("--threads", ev_threads, "worker threads");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "generate benchmark survival data");
  SimConfig sim_config;
  std::string sim_out, sim_relevance_out;
  sim_cmd->add_option("--n", sim_config.n, "observations")->required();
  sim_cmd->add_option("--max-corr", sim_config.max_corr, "max absolute predictor correlation (default 0)");
  sim_cmd->add_option("--n-per-class", sim_config.n_per_class, "predictors per class (default 15)");
  sim_cmd->add_option("--hazard-ratio", sim_config.hazard_ratio_per_sd, "hazard ratio per SD (default 1.64)");
  sim_cmd->add_option("--censoring", sim_config.target_censoring, "target censored fraction (default 0.45)");
  sim_cmd->add_option("--seed", sim_config.seed, "seed");
  sim_cmd->add_option("--out", sim_out, "output data CSV")->required();
  sim_cmd->add_option("--relevance-out", sim_relevance_out, "sidecar relevance CSV (default <out>_relevance.csv)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "benchmark harnesses");
  bench_cmd->require_subcommand(1);

  auto* cv_cmd = bench_cmd->add_subcommand("cv", "Monte-Carlo cross validation of forest variants");
  std::string cv_data, cv_time = "time", cv_status = "status", cv_out, cv_learners = "fast,cph,random";
  int cv_runs = 25;
  HyperFlags cv_flags;
  cv_cmd->add_option("--data", cv_data, "dataset CSV")->required();
  cv_cmd->add_option("--time", cv_time, "time column name");
  cv_cmd->add_option("--status", cv_status, "status column name");
  cv_cmd->add_option("--out", cv_out, "output CSV")->required();
  cv_cmd->add_option("--learners", cv_learners, "comma list of fast|cph|random (default all)");
  cv_cmd->add_option("--runs", cv_runs, "Monte-Carlo runs (default 25)");
  cv_flags.attach(cv_cmd);

  auto* vi_cmd = bench_cmd->add_subcommand("vi", "variable-importance discrimination experiment");
  std::string vi_grid = "default", vi_techniques = "negation,permutation,anova", vi_out;
  int vi_reps = 1, vi_n = 1000;
  double vi_corr = 0.0;
  HyperFlags vi_flags;
  vi_cmd->add_option("--grid", vi_grid, "default (3 sizes x 3 correlations) or single");
  vi_cmd->add_option("--techniques", vi_techniques, "comma list of negation|permutation|anova");
  vi_cmd->add_option("--reps", vi_reps, "replicates per cell (default 1)");
  vi_cmd->add_option("--n", vi_n, "observations for --grid single");
  vi_cmd->add_option("--max-corr", vi_corr, "correlation for --grid single");
  vi_cmd->add_option("--out", vi_out, "output CSV")->required();
  vi_flags.attach(vi_cmd);

  std::vector<const char*> argv;
  argv.push_back("obliqforest");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_data, fit_time, fit_status, fit_out, fit_flags);
    if (predict_cmd->parsed()) return cmd_predict(pr_model, pr_data, pr_out, pr_times, pr_time, pr_status, pr_threads);
    if (imp_cmd->parsed()) {
      return cmd_importance(imp_model, imp_data, imp_time, imp_status, imp_technique, imp_out, imp_seed, imp_threads,
                            imp_anova_raw);
    }
    if (eval_cmd->parsed()) return cmd_evaluate(ev_model, ev_data, ev_time, ev_status, ev_train, ev_out, ev_threads);
    if (sim_cmd->parsed()) return cmd_simulate(sim_config, sim_out, sim_relevance_out);
    if (bench_cmd->parsed()) {
      if (cv_cmd->parsed()) return cmd_bench_cv(cv_data, cv_time, cv_status, cv_out, cv_learners, cv_runs, cv_flags);
      if (vi_cmd->parsed()) return cmd_bench_vi(vi_grid, vi_techniques, vi_reps, vi_out, vi_flags, vi_n, vi_corr);
    }
    std::cerr << "no subcommand given\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace obliqforest
