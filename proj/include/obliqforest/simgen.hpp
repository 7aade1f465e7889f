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
#include <cstdint>
#include <string>
#include <vector>

#include "obliqforest/rng.hpp"
#include "obliqforest/survdata.hpp"

namespace obliqforest {

/// Configuration for one simulated dataset: five predictor classes with
/// n_per_class observed predictors each, pairwise correlations bounded by
/// max_corr, every effect worth hazard_ratio_per_sd per standard deviation,
/// and exponential censoring tuned to target_censoring.
struct SimConfig {
  int n = 1000;
  int n_per_class = 15;  // must be a multiple of 3 (combination sources come in triples)
  double max_corr = 0.0;
  double hazard_ratio_per_sd = 1.64;
  double target_censoring = 0.45;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class PredictorClass { kIrrelevant, kMain, kNonlinear, kCombinationSource, kInteraction };

std::string predictor_class_name(PredictorClass c);

/// Simulated dataset: the observed predictor matrix only (non-linear maps,
/// combinations, and interaction products are dropped after generating the
/// outcome), plus the relevance labels driving vi_discrimination.
struct SimData {
  SurvivalDataset ds;
  std::vector<int> relevance;                 // 1 except for the irrelevant class
  std::vector<PredictorClass> class_labels;   // per observed predictor
  std::vector<int> interaction_partner;       // hidden-effect column index; -1 otherwise
  double realized_censoring = 0.0;
};

/// Random correlation matrix with off-diagonals drawn uniformly from
/// [-max_corr, max_corr], projected to the PSD cone (eigenvalue clipping +
/// diagonal renormalization).
Eigen::MatrixXd gen_correlation_matrix(int p, double max_corr, Rng& rng);

/// n draws from N(0, corr) via the symmetric square root of corr.
Eigen::MatrixXd gen_predictors(int n, const Eigen::MatrixXd& corr, Rng& rng);

/// Hidden effect matrix used to generate the outcome: main columns as-is,
/// centered squares for non-linear columns, standardized means of source
/// triples for combinations, standardized products for interactions. Every
/// effect column gets log-hazard coefficient ln(hazard_ratio_per_sd).
struct EffectSpec {
  Eigen::MatrixXd effects;
  Eigen::VectorXd coefs;
  std::vector<PredictorClass> class_labels;  // per observed predictor
  std::vector<int> relevance;
  std::vector<int> interaction_partner;
};

EffectSpec build_effect_matrix(const Eigen::MatrixXd& x_raw, const SimConfig& config, Rng& rng);

/// Weibull proportional-hazards event times (shape 1.5, scale calibrated to
/// a median event time of 1) with independent exponential censoring whose
/// rate is bisected on the drawn sample to hit target_censoring.
struct SurvivalDraw {
  Eigen::VectorXd time;
  Eigen::VectorXi status;
  double realized_censoring = 0.0;
};

SurvivalDraw gen_survival(const Eigen::MatrixXd& effects, const Eigen::VectorXd& coefs, double target_censoring,
                          Rng& rng);

/// Full pipeline: correlation matrix -> predictors -> effects -> outcome.
SimData simulate(const SimConfig& config);

/// Writes the generated data as survdata CSV plus a sidecar relevance file
/// (predictor name, class, relevance).
void write_sim_csv(const SimData& sim, const std::string& data_path, const std::string& relevance_path,
                   const std::string& comment = "");

}  // namespace obliqforest
