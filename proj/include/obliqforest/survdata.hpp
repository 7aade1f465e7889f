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
#include <string>
#include <vector>

namespace obliqforest {

/// Right-censored survival data: an n x p predictor matrix plus follow-up
/// time and event status per row. Immutable after construction; safe to
/// share read-only across worker threads.
///
/// sort_index orders rows by ascending time with events before censorings at
/// tied times (the risk-set convention assumed by the estimators downstream).
struct SurvivalDataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd time;
  Eigen::VectorXi status;
  std::vector<std::string> col_names;
  std::vector<int> sort_index;

  int n() const { return static_cast<int>(time.size()); }
  int p() const { return static_cast<int>(x.cols()); }

  /// Validates all invariants (finite entries, positive times, {0,1} status,
  /// unique column names, at least one event) and computes sort_index.
  static SurvivalDataset create(Eigen::MatrixXd x, Eigen::VectorXd time, Eigen::VectorXi status,
                                std::vector<std::string> col_names);
};

/// Reads a survival dataset from CSV: the named outcome columns become
/// (time, status), every other column is a predictor in file order.
SurvivalDataset load_csv(const std::string& path, const std::string& time_col, const std::string& status_col);

/// Writes a dataset back to CSV (predictors in stored order, then the two
/// outcome columns) with round-trip-exact numeric formatting.
void write_csv(const SurvivalDataset& ds, const std::string& path, const std::string& time_col,
               const std::string& status_col, const std::string& comment = "");

/// Strictly increasing unique times at which at least one event occurs.
std::vector<double> event_times(const SurvivalDataset& ds);

}  // namespace obliqforest
