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

#include "obliqforest/survcurve.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace obliqforest {

double StepCurve::at(double t) const {
  // index of last time <= t
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return init;
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

double StepCurve::at_left(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return init;
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

KaplanMeier kaplan_meier(std::span<const double> time, std::span<const int> status, std::span<const double> weights) {
  const std::size_t n = time.size();
  if (status.size() != n || weights.size() != n) throw std::invalid_argument("kaplan_meier: length mismatch");
  double total = 0.0;
  for (const double w : weights) {
    if (w < 0.0) throw std::invalid_argument("kaplan_meier: negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("kaplan_meier: total weight must be positive");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return time[a] < time[b]; });

  KaplanMeier km;
  double at_risk = total;
  double surv = 1.0;
  double chf = 0.0;
  std::size_t i = 0;
  while (i < n) {
    const double t = time[order[i]];
    double d = 0.0;    // weighted events at t
    double out = 0.0;  // weighted rows leaving the risk set at t
    for (; i < n && time[order[i]] == t; ++i) {
      const double w = weights[order[i]];
      out += w;
      if (status[order[i]] == 1) d += w;
    }
    if (d > 0.0 && at_risk > 0.0) {
      surv *= 1.0 - d / at_risk;
      chf += d / at_risk;
      km.times.push_back(t);
      km.surv.push_back(surv);
      km.chf.push_back(chf);
    }
    at_risk -= out;
  }
  return km;
}

}  // namespace obliqforest
