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

#include "obliqforest/splitfind.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace obliqforest {

double logrank_stat(std::span<const double> eta, std::span<const double> time, std::span<const int> status,
                    std::span<const double> weights, double cutpoint) {
  const std::size_t n = eta.size();
  if (time.size() != n || status.size() != n || weights.size() != n) {
    throw std::invalid_argument("logrank_stat: length mismatch");
  }

  double n_left = 0.0, n_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    n_total += weights[i];
    if (eta[i] <= cutpoint) n_left += weights[i];
  }
  if (n_left <= 0.0 || n_left >= n_total) throw std::runtime_error("degenerate cutpoint");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (time[a] != time[b]) return time[a] < time[b];
    return a < b;
  });

  // walk event times in ascending order, shrinking the weighted risk sets
  double sum_oe = 0.0;
  double var = 0.0;
  std::size_t i = 0;
  while (i < n) {
    const double t = time[order[i]];
    double d = 0.0, d_left = 0.0;
    double out = 0.0, out_left = 0.0;
    for (; i < n && time[order[i]] == t; ++i) {
      const std::size_t row = order[i];
      const double w = weights[row];
      out += w;
      const bool left = eta[row] <= cutpoint;
      if (left) out_left += w;
      if (status[row] == 1) {
        d += w;
        if (left) d_left += w;
      }
    }
    if (d > 0.0 && n_total > 1.0) {
      const double frac_left = n_left / n_total;
      sum_oe += d_left - d * frac_left;
      var += d * frac_left * (1.0 - frac_left) * (n_total - d) / (n_total - 1.0);
    }
    n_total -= out;
    n_left -= out_left;
  }
  if (var <= 0.0) return 0.0;
  return sum_oe * sum_oe / var;
}

std::vector<double> sample_cutpoints(std::span<const double> eta, std::span<const double> weights,
                                     std::span<const int> status, int n_split, double min_obs, double min_events,
                                     Rng& rng) {
  const std::size_t n = eta.size();
  if (weights.size() != n || status.size() != n) throw std::invalid_argument("sample_cutpoints: length mismatch");
  if (n_split < 1) throw std::invalid_argument("sample_cutpoints: n_split must be >= 1");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eta[a] < eta[b]; });

  double total_obs = 0.0, total_events = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total_obs += weights[i];
    if (status[i] == 1) total_events += weights[i];
  }

  // a unique eta value is a valid cutpoint when both sides of (<=, >) meet
  // the weighted observation and event minima
  std::vector<double> valid;
  double left_obs = 0.0, left_events = 0.0;
  std::size_t i = 0;
  while (i < n) {
    const double v = eta[order[i]];
    for (; i < n && eta[order[i]] == v; ++i) {
      const double w = weights[order[i]];
      left_obs += w;
      if (status[order[i]] == 1) left_events += w;
    }
    if (i == n) break;  // largest value leaves the right side empty
    if (left_obs >= min_obs && left_events >= min_events && total_obs - left_obs >= min_obs &&
        total_events - left_events >= min_events) {
      valid.push_back(v);
    }
  }

  if (static_cast<int>(valid.size()) > n_split) {
    std::vector<double> chosen(static_cast<std::size_t>(n_split));
    for (int j = 0; j < n_split; ++j) {
      const std::size_t pick = static_cast<std::size_t>(j) + rng.below(valid.size() - static_cast<std::size_t>(j));
      std::swap(valid[static_cast<std::size_t>(j)], valid[pick]);
      chosen[static_cast<std::size_t>(j)] = valid[static_cast<std::size_t>(j)];
    }
    valid = std::move(chosen);
  }
  std::sort(valid.begin(), valid.end());
  return valid;
}

SplitCandidate best_cutpoint(std::span<const double> eta, std::span<const double> time, std::span<const int> status,
                             std::span<const double> weights, std::span<const double> candidates) {
  if (candidates.empty()) throw std::invalid_argument("best_cutpoint: empty candidate list");
  SplitCandidate best;
  bool have = false;
  for (const double c : candidates) {
    const double stat = logrank_stat(eta, time, status, weights, c);
    if (!have || stat > best.stat || (stat == best.stat && c < best.cutpoint)) {
      best = {c, stat};
      have = true;
    }
  }
  return best;
}

}  // namespace obliqforest
