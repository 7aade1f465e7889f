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

#include <span>
#include <vector>

#include "obliqforest/survcurve.hpp"

namespace obliqforest {

/// Harrell's concordance over usable pairs: (i, j) with T_i < T_j and
/// delta_i = 1, plus time-tied pairs with exactly one event. Concordant
/// when the earlier event has the higher risk; risk ties count 0.5.
/// Throws when no usable pair exists.
double harrell_c(std::span<const double> time, std::span<const int> status, std::span<const double> risk);

/// Kaplan-Meier estimate G of the censoring distribution (censorings
/// treated as events). Use at_left() where a weight at an event time is
/// needed.
StepCurve censoring_km(std::span<const double> time, std::span<const int> status);

/// IPCW Brier score at horizon t:
/// (1/q) sum_i [ S_i(t)^2 I(T_i <= t, d_i=1)/G(T_i-) + (1-S_i(t))^2 I(T_i > t)/G(t) ].
/// Censored observations with T_i <= t contribute nothing. Throws
/// "IPCW weight undefined" (naming the horizon) when G vanishes on a
/// contributing term.
double brier_t(std::span<const double> surv_pred, std::span<const double> time, std::span<const int> status, double t,
               const StepCurve& g);

/// Trapezoidal time-average of a Brier-score curve over [t1, t2]. The grid
/// must cover [t1, t2]; values at t1/t2 come from the piecewise-linear
/// interpolant when they are not grid points.
double integrated_brier(std::span<const double> grid_times, std::span<const double> bs_values, double t1, double t2);

/// Index of prediction accuracy: 1 - ibs_model / ibs_reference.
double ipa(double ibs_model, double ibs_reference);

/// IPCW time-dependent C at horizon t (probability of assigning higher
/// risk to a case T <= t, delta = 1 than to a non-case T > t). Case weight
/// 1/G(T-), non-case weight 1/G(t); risk ties count 0.5.
double td_c_statistic(std::span<const double> risk, std::span<const double> time, std::span<const int> status, double t,
                      const StepCurve& g);

/// Linear-interpolation (type 7) quantile of a sorted sample.
double quantile_type7(std::span<const double> sorted, double prob);

/// Full evaluation bundle for one model on one test set. All stored values
/// stay on the raw [0,1] scale; scale_by_100 only tells a presentation
/// layer to multiply IPA and C statistics by 100 when displaying.
struct EvalResult {
  double harrell = 0.0;
  double td_c = 0.0;
  double td_horizon = 0.0;
  std::vector<double> bs_times;
  std::vector<double> bs_values;
  double t1 = 0.0, t2 = 0.0;
  double ibs = 0.0;
  double ibs_reference = 0.0;  // NaN when no reference supplied
  double ipa = 0.0;            // NaN when no reference supplied
  bool scale_by_100 = false;
};

}  // namespace obliqforest
