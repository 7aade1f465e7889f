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

#include "obliqforest/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "obliqforest/csv.hpp"

namespace obliqforest {

double harrell_c(std::span<const double> time, std::span<const int> status, std::span<const double> risk) {
  const std::size_t n = time.size();
  if (status.size() != n || risk.size() != n) throw std::invalid_argument("harrell_c: length mismatch");
  double concordant = 0.0;
  double usable = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] != 1) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const bool comparable = time[i] < time[j] || (time[i] == time[j] && status[j] == 0);
      if (!comparable) continue;
      usable += 1.0;
      if (risk[i] > risk[j]) {
        concordant += 1.0;
      } else if (risk[i] == risk[j]) {
        concordant += 0.5;
      }
    }
  }
  if (usable == 0.0) throw std::runtime_error("harrell_c: no usable pairs");
  return concordant / usable;
}

StepCurve censoring_km(std::span<const double> time, std::span<const int> status) {
  std::vector<int> flipped(time.size());
  for (std::size_t i = 0; i < time.size(); ++i) flipped[i] = 1 - status[i];
  const std::vector<double> unit(time.size(), 1.0);
  return kaplan_meier(time, flipped, unit).surv_curve();
}

double brier_t(std::span<const double> surv_pred, std::span<const double> time, std::span<const int> status, double t,
               const StepCurve& g) {
  const std::size_t n = time.size();
  if (surv_pred.size() != n || status.size() != n) throw std::invalid_argument("brier_t: length mismatch");
  if (n == 0) throw std::invalid_argument("brier_t: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = surv_pred[i];
    if (time[i] <= t && status[i] == 1) {
      const double gi = g.at_left(time[i]);
      if (gi <= 0.0) throw std::runtime_error("IPCW weight undefined at t=" + format_double(time[i]));
      sum += s * s / gi;
    } else if (time[i] > t) {
      const double gt = g.at(t);
      if (gt <= 0.0) throw std::runtime_error("IPCW weight undefined at t=" + format_double(t));
      sum += (1.0 - s) * (1.0 - s) / gt;
    }
    // censored with T_i <= t: contributes nothing
  }
  return sum / static_cast<double>(n);
}

double integrated_brier(std::span<const double> grid_times, std::span<const double> bs_values, double t1, double t2) {
  const std::size_t n = grid_times.size();
  if (bs_values.size() != n) throw std::invalid_argument("integrated_brier: length mismatch");
  if (n < 2) throw std::invalid_argument("integrated_brier: need at least 2 grid points");
  if (!(t1 < t2)) throw std::invalid_argument("integrated_brier: t1 must be < t2");
  if (grid_times.front() > t1 || grid_times.back() < t2) {
    throw std::invalid_argument("integrated_brier: grid must cover [t1, t2]");
  }

  auto value_at = [&](double t) {
    const auto it = std::lower_bound(grid_times.begin(), grid_times.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - grid_times.begin());
    if (hi < n && grid_times[hi] == t) return bs_values[hi];
    const std::size_t lo = hi - 1;
    const double w = (t - grid_times[lo]) / (grid_times[hi] - grid_times[lo]);
    return bs_values[lo] + w * (bs_values[hi] - bs_values[lo]);
  };

  double integral = 0.0;
  double prev_t = t1;
  double prev_v = value_at(t1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid_times[i];
    if (t <= t1) continue;
    if (t >= t2) break;
    const double v = bs_values[i];
    integral += 0.5 * (prev_v + v) * (t - prev_t);
    prev_t = t;
    prev_v = v;
  }
  integral += 0.5 * (prev_v + value_at(t2)) * (t2 - prev_t);
  return integral / (t2 - t1);
}

double ipa(double ibs_model, double ibs_reference) {
  if (!(ibs_reference > 0.0)) throw std::invalid_argument("ipa: reference integrated Brier score must be > 0");
  return 1.0 - ibs_model / ibs_reference;
}

double td_c_statistic(std::span<const double> risk, std::span<const double> time, std::span<const int> status, double t,
                      const StepCurve& g) {
  const std::size_t n = time.size();
  if (risk.size() != n || status.size() != n) throw std::invalid_argument("td_c_statistic: length mismatch");

  std::vector<std::size_t> cases, noncases;
  for (std::size_t i = 0; i < n; ++i) {
    if (time[i] <= t && status[i] == 1) {
      cases.push_back(i);
    } else if (time[i] > t) {
      noncases.push_back(i);
    }
  }
  if (cases.empty() || noncases.empty()) throw std::runtime_error("td_c_statistic: no comparable pairs");

  const double g_t = g.at(t);
  if (g_t <= 0.0) throw std::runtime_error("IPCW weight undefined at t=" + format_double(t));

  double num = 0.0, den = 0.0;
  for (const std::size_t i : cases) {
    const double gi = g.at_left(time[i]);
    if (gi <= 0.0) throw std::runtime_error("IPCW weight undefined at t=" + format_double(time[i]));
    const double wi = 1.0 / gi;
    for (const std::size_t j : noncases) {
      const double w = wi / g_t;
      den += w;
      if (risk[i] > risk[j]) {
        num += w;
      } else if (risk[i] == risk[j]) {
        num += 0.5 * w;
      }
    }
  }
  return num / den;
}

double quantile_type7(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (prob <= 0.0) return sorted.front();
  if (prob >= 1.0) return sorted.back();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const std::size_t lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace obliqforest
