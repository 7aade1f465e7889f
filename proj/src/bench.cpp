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

#include "obliqforest/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace obliqforest {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string strategy_label(ComboStrategy s) {
  switch (s) {
    case ComboStrategy::kFast: return "fast";
    case ComboStrategy::kCph: return "cph";
    case ComboStrategy::kRandom: return "random";
  }
  return "fast";
}

std::string technique_label(ViTechnique t) {
  switch (t) {
    case ViTechnique::kNegation: return "negation";
    case ViTechnique::kPermutation: return "permutation";
    case ViTechnique::kAnova: return "anova";
  }
  return "negation";
}

// 50/50 split stratified on status; events and censorings are each halved
// so both sides keep events.
void stratified_split(const SurvivalDataset& ds, Rng& rng, std::vector<int>& train, std::vector<int>& test) {
  std::vector<int> events, censored;
  for (int i = 0; i < ds.n(); ++i) (ds.status[i] == 1 ? events : censored).push_back(i);
  rng.shuffle(events);
  rng.shuffle(censored);
  train.clear();
  test.clear();
  for (std::size_t i = 0; i < events.size(); ++i) ((i % 2 == 0) ? train : test).push_back(events[i]);
  for (std::size_t i = 0; i < censored.size(); ++i) ((i % 2 == 0) ? train : test).push_back(censored[i]);
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
}

SurvivalDataset subset_rows(const SurvivalDataset& ds, const std::vector<int>& rows) {
  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXd x(m, ds.p());
  Eigen::VectorXd time(m);
  Eigen::VectorXi status(m);
  for (int i = 0; i < m; ++i) {
    x.row(i) = ds.x.row(rows[static_cast<std::size_t>(i)]);
    time[i] = ds.time[rows[static_cast<std::size_t>(i)]];
    status[i] = ds.status[rows[static_cast<std::size_t>(i)]];
  }
  return SurvivalDataset::create(std::move(x), std::move(time), std::move(status), ds.col_names);
}

}  // namespace

EvalResult evaluate_forest(const Forest& forest, const Eigen::MatrixXd& x_test, const Eigen::VectorXd& time,
                           const Eigen::VectorXi& status, const StepCurve* train_km, double td_horizon) {
  const std::span<const double> time_span{time.data(), static_cast<std::size_t>(time.size())};
  const std::span<const int> status_span{status.data(), static_cast<std::size_t>(status.size())};

  EvalResult res;
  res.td_horizon = td_horizon;

  const Eigen::VectorXd risk = predict_mortality(forest, x_test);
  const std::span<const double> risk_span{risk.data(), static_cast<std::size_t>(risk.size())};
  res.harrell = harrell_c(time_span, status_span, risk_span);

  const StepCurve g = censoring_km(time_span, status_span);
  res.td_c = td_c_statistic(risk_span, time_span, status_span, td_horizon, g);

  // Brier grid: 25th/75th percentiles of test event times plus the event
  // times strictly between them
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < time.size(); ++i) {
    if (status[i] == 1) ev.push_back(time[i]);
  }
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
  if (ev.size() < 2) throw std::runtime_error("evaluate_forest: need at least 2 distinct event times");
  res.t1 = quantile_type7(ev, 0.25);
  res.t2 = quantile_type7(ev, 0.75);
  if (!(res.t1 < res.t2)) throw std::runtime_error("evaluate_forest: degenerate event-time quartiles");

  res.bs_times.push_back(res.t1);
  for (const double t : ev) {
    if (t > res.t1 && t < res.t2) res.bs_times.push_back(t);
  }
  res.bs_times.push_back(res.t2);

  const Eigen::MatrixXd surv = predict_survival(forest, x_test, res.bs_times);
  res.bs_values.resize(res.bs_times.size());
  for (std::size_t c = 0; c < res.bs_times.size(); ++c) {
    const Eigen::VectorXd col = surv.col(static_cast<Eigen::Index>(c));
    res.bs_values[c] = brier_t({col.data(), static_cast<std::size_t>(col.size())}, time_span, status_span,
                               res.bs_times[c], g);
  }
  res.ibs = integrated_brier(res.bs_times, res.bs_values, res.t1, res.t2);

  if (train_km != nullptr) {
    std::vector<double> ref_bs(res.bs_times.size());
    std::vector<double> ref_pred(static_cast<std::size_t>(time.size()));
    for (std::size_t c = 0; c < res.bs_times.size(); ++c) {
      std::fill(ref_pred.begin(), ref_pred.end(), train_km->at(res.bs_times[c]));
      ref_bs[c] = brier_t(ref_pred, time_span, status_span, res.bs_times[c], g);
    }
    res.ibs_reference = integrated_brier(res.bs_times, ref_bs, res.t1, res.t2);
    res.ipa = ipa(res.ibs, res.ibs_reference);
  } else {
    res.ibs_reference = std::numeric_limits<double>::quiet_NaN();
    res.ipa = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

std::vector<BenchRow> monte_carlo_cv(const SurvivalDataset& ds, const std::vector<ComboStrategy>& learners, int n_runs,
                                     std::uint64_t seed, const ForestParams& base, const std::string& task) {
  if (n_runs < 1) throw std::invalid_argument("monte_carlo_cv: n_runs must be >= 1");
  if (learners.empty()) throw std::invalid_argument("monte_carlo_cv: no learners");

  std::vector<BenchRow> rows;
  std::vector<int> train_idx, test_idx;
  for (int run = 1; run <= n_runs; ++run) {
    Rng split_rng = Rng::stream(seed, kStreamBenchSplit, static_cast<std::uint64_t>(run));
    stratified_split(ds, split_rng, train_idx, test_idx);

    for (std::size_t l = 0; l < learners.size(); ++l) {
      BenchRow row;
      row.task = task;
      row.learner = strategy_label(learners[l]);
      row.run = run;
      row.seed = mix64(mix64(seed, kStreamBenchFit), static_cast<std::uint64_t>(run) * 64 + l);
      try {
        const SurvivalDataset train = subset_rows(ds, train_idx);
        const SurvivalDataset test = subset_rows(ds, test_idx);

        ForestParams params = base;
        params.grow.combo_strategy = learners[l];
        params.seed = row.seed;

        const auto fit_start = Clock::now();
        const Forest forest = fit(train, params);
        row.fit_ms = elapsed_ms(fit_start);

        const std::vector<double> train_ev = event_times(train);
        const double horizon = quantile_type7(train_ev, 0.5);
        std::vector<int> status_vec(train.status.data(), train.status.data() + train.n());
        std::vector<double> time_vec(train.time.data(), train.time.data() + train.n());
        const std::vector<double> unit(static_cast<std::size_t>(train.n()), 1.0);
        const StepCurve train_km = kaplan_meier(time_vec, status_vec, unit).surv_curve();

        const auto pred_start = Clock::now();
        const EvalResult eval = evaluate_forest(forest, test.x, test.time, test.status, &train_km, horizon);
        row.predict_ms = elapsed_ms(pred_start);

        row.ipa = eval.ipa;
        row.td_c = eval.td_c;
        row.harrell = eval.harrell;
      } catch (const std::exception&) {
        row.failed = true;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ViBenchRow> vi_benchmark(const std::vector<SimConfig>& grid, const std::vector<ViTechnique>& techniques,
                                     int n_reps, std::uint64_t seed, const ForestParams& base) {
  if (grid.empty()) throw std::invalid_argument("vi_benchmark: empty grid");
  if (n_reps < 1) throw std::invalid_argument("vi_benchmark: n_reps must be >= 1");

  std::vector<ViBenchRow> rows;
  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    for (int rep = 1; rep <= n_reps; ++rep) {
      SimConfig config = grid[cell];
      config.seed = mix64(mix64(seed, cell), static_cast<std::uint64_t>(rep));
      const SimData sim = simulate(config);

      ForestParams params = base;
      params.grow.combo_strategy = ComboStrategy::kFast;
      params.seed = mix64(config.seed, 0x0f0f0f0fULL);
      const Forest forest = fit(sim.ds, params);

      for (const ViTechnique technique : techniques) {
        VIReport report;
        switch (technique) {
          case ViTechnique::kNegation: report = negation_vi(forest, sim.ds); break;
          case ViTechnique::kPermutation: report = permutation_vi(forest, sim.ds, mix64(config.seed, 77)); break;
          case ViTechnique::kAnova: report = anova_vi(forest); break;
        }

        auto push = [&](const std::string& var_class, double c_stat) {
          rows.push_back({config.n, config.max_corr, technique_label(technique), var_class, c_stat, rep});
        };
        push("overall", vi_discrimination(report.values, sim.relevance));

        const std::pair<PredictorClass, std::string> panels[] = {
            {PredictorClass::kMain, "main"},
            {PredictorClass::kNonlinear, "nonlinear"},
            {PredictorClass::kCombinationSource, "combination"},
            {PredictorClass::kInteraction, "interaction"},
        };
        for (const auto& [cls, label] : panels) {
          std::vector<double> vi;
          std::vector<int> rel;
          for (std::size_t j = 0; j < report.values.size(); ++j) {
            if (sim.class_labels[j] == cls || sim.class_labels[j] == PredictorClass::kIrrelevant) {
              vi.push_back(report.values[j]);
              rel.push_back(sim.relevance[j]);
            }
          }
          push(label, vi_discrimination(vi, rel));
        }
      }
    }
  }
  return rows;
}

}  // namespace obliqforest
