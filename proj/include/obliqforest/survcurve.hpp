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

namespace obliqforest {

/// Right-continuous step function: value is `init` before times[0] and
/// values[k] on [times[k], times[k+1]).
struct StepCurve {
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;  // same length as times
  double init = 1.0;

  double at(double t) const;       // S(t), right-continuous
  double at_left(double t) const;  // S(t-), left limit
};

/// Weighted product-limit survival and Nelson-Aalen cumulative hazard over
/// the unique event times of the sample. Rows with weight 0 are ignored.
struct KaplanMeier {
  std::vector<double> times;  // unique event times, ascending
  std::vector<double> surv;   // product-limit estimate at each time
  std::vector<double> chf;    // Nelson-Aalen cumulative hazard

  StepCurve surv_curve() const { return StepCurve{times, surv, 1.0}; }
  StepCurve chf_curve() const { return StepCurve{times, chf, 0.0}; }
};

KaplanMeier kaplan_meier(std::span<const double> time, std::span<const int> status, std::span<const double> weights);

}  // namespace obliqforest
