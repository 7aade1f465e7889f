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
#include <string>
#include <vector>

#include "obliqforest/forest.hpp"
#include "obliqforest/importance.hpp"
#include "obliqforest/metrics.hpp"
#include "obliqforest/simgen.hpp"
#include "obliqforest/survdata.hpp"

namespace obliqforest {

/// Evaluates a trained forest on a test set: Harrell C and time-dependent C
/// on mortality, Brier-score curve on the test event-time grid between the
/// 25th and 75th percentile of test event times, integrated Brier, and IPA
/// against the training Kaplan-Meier reference (skipped when train_km is
/// null). td_horizon defaults to the median training event time.
EvalResult evaluate_forest(const Forest& forest, const Eigen::MatrixXd& x_test, const Eigen::VectorXd& time,
                           const Eigen::VectorXi& status, const StepCurve* train_km, double td_horizon);

struct BenchRow {
  std::string task;
  std::string learner;  // fast | cph | random
  int run = 0;
  bool failed = false;
  double ipa = 0.0;
  double td_c = 0.0;
  double harrell = 0.0;
  double fit_ms = 0.0;
  double predict_ms = 0.0;
  std::uint64_t seed = 0;  // forest seed used for this (run, learner)
};

/// Monte-Carlo cross validation: n_runs random 50/50 train/test splits
/// (stratified on status so both halves keep events), each learner fit on
/// the training half and scored on the held-out half. Learner failures are
/// recorded with the failed flag, not raised.
std::vector<BenchRow> monte_carlo_cv(const SurvivalDataset& ds, const std::vector<ComboStrategy>& learners, int n_runs,
                                     std::uint64_t seed, const ForestParams& base, const std::string& task);

struct ViBenchRow {
  int n = 0;
  double max_corr = 0.0;
  std::string technique;  // negation | permutation | anova
  std::string var_class;  // overall | main | nonlinear | combination | interaction
  double c_stat = 0.0;
  int rep = 0;
};

/// Variable-importance discrimination experiment: per grid cell and
/// replicate, simulate data, fit a forest, compute each technique's
/// importance, and score how well it separates relevant from irrelevant
/// predictors — overall and per relevant class against the irrelevant one.
std::vector<ViBenchRow> vi_benchmark(const std::vector<SimConfig>& grid, const std::vector<ViTechnique>& techniques,
                                     int n_reps, std::uint64_t seed, const ForestParams& base);

}  // namespace obliqforest
