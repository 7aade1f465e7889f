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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "obliqforest/splitfind.hpp"
#include "oracles.hpp"

using namespace obliqforest;

namespace {

struct SplitData {
  std::vector<double> eta, time, weights;
  std::vector<int> status;
};

SplitData random_split_data(std::uint64_t seed, int n, bool integer_weights) {
  Rng rng(seed);
  SplitData d;
  for (int i = 0; i < n; ++i) {
    d.eta.push_back(rng.normal());
    d.time.push_back(0.1 + 4.0 * rng.uniform());
    d.status.push_back(rng.uniform() < 0.7 ? 1 : 0);
    d.weights.push_back(integer_weights ? 1.0 + static_cast<double>(rng.below(3)) : 1.0);
  }
  d.status[0] = 1;
  return d;
}

}  // namespace

TEST_CASE("identical groups give statistic 0") {
  const std::vector<double> eta{0, 0, 0, 1, 1, 1};
  const std::vector<double> time{1, 2, 3, 1, 2, 3};
  const std::vector<int> status{1, 1, 1, 1, 1, 1};
  const std::vector<double> w(6, 1.0);
  CHECK(logrank_stat(eta, time, status, w, 0.5) == 0.0);
}

TEST_CASE("six-row fixture matches the textbook tabulation") {
  const std::vector<double> eta{0, 0, 0, 1, 1, 1};
  const std::vector<double> time{1, 2, 3, 4, 5, 6};
  const std::vector<int> status{1, 1, 1, 1, 1, 1};
  const std::vector<double> w(6, 1.0);
  const double stat = logrank_stat(eta, time, status, w, 0.5);
  // hand tabulation: O-E = 0.5 + 0.6 + 0.75 = 1.85, V = 0.25 + 0.24 + 0.1875
  CHECK(stat == doctest::Approx(1.85 * 1.85 / 0.6775).epsilon(1e-10));
  CHECK(stat == doctest::Approx(1369.0 / 271.0).epsilon(1e-10));

  std::vector<int> group(6);
  for (int i = 0; i < 6; ++i) group[static_cast<std::size_t>(i)] = eta[static_cast<std::size_t>(i)] > 0.5 ? 1 : 0;
  CHECK(stat == doctest::Approx(oracles::logrank(time, status, group)).epsilon(1e-10));
}

TEST_CASE("weighted statistic equals the duplicated-rows oracle") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const SplitData d = random_split_data(seed, 30, true);
    const double cut = d.eta[5];
    const double stat = logrank_stat(d.eta, d.time, d.status, d.weights, cut);

    std::vector<double> dup_time;
    std::vector<int> dup_status, dup_group;
    for (std::size_t i = 0; i < d.eta.size(); ++i) {
      const int copies = static_cast<int>(d.weights[i]);
      for (int c = 0; c < copies; ++c) {
        dup_time.push_back(d.time[i]);
        dup_status.push_back(d.status[i]);
        dup_group.push_back(d.eta[i] > cut ? 1 : 0);
      }
    }
    CHECK(stat == doctest::Approx(oracles::logrank(dup_time, dup_status, dup_group)).epsilon(1e-10));
  }
}

TEST_CASE("one-sided cutpoints are rejected") {
  const SplitData d = random_split_data(2, 12, false);
  const double below = *std::min_element(d.eta.begin(), d.eta.end()) - 1.0;
  const double above = *std::max_element(d.eta.begin(), d.eta.end()) + 1.0;
  CHECK_THROWS_WITH_AS(logrank_stat(d.eta, d.time, d.status, d.weights, below), "degenerate cutpoint",
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(logrank_stat(d.eta, d.time, d.status, d.weights, above), "degenerate cutpoint",
                       std::runtime_error);
}

TEST_CASE("statistic is invariant under monotone transforms of eta") {
  const SplitData d = random_split_data(3, 40, true);
  const double cut = d.eta[7];
  const double base = logrank_stat(d.eta, d.time, d.status, d.weights, cut);
  std::vector<double> transformed(d.eta.size());
  for (std::size_t i = 0; i < d.eta.size(); ++i) transformed[i] = 2.0 * d.eta[i] + 1.0;
  CHECK(logrank_stat(transformed, d.time, d.status, d.weights, 2.0 * cut + 1.0) == base);
}

TEST_CASE("sample_cutpoints basics") {
  Rng rng(4);
  const std::vector<double> w(10, 1.0);
  const std::vector<int> ev(10, 1);

  SUBCASE("all eta equal yields no candidates") {
    const std::vector<double> eta(10, 2.5);
    CHECK(sample_cutpoints(eta, w, ev, 5, 1, 1, rng).empty());
  }

  SUBCASE("draws n_split distinct valid values") {
    std::vector<double> eta;
    for (int i = 0; i < 10; ++i) eta.push_back(static_cast<double>(i));
    const auto cuts = sample_cutpoints(eta, w, ev, 5, 1, 1, rng);
    REQUIRE(cuts.size() == 5);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (i > 0) CHECK(cuts[i] > cuts[i - 1]);
      // each side keeps at least one weighted observation and event
      double left = 0.0;
      for (const double e : eta) {
        if (e <= cuts[i]) left += 1.0;
      }
      CHECK(left >= 1.0);
      CHECK(10.0 - left >= 1.0);
    }
  }

  SUBCASE("clamps to the number of valid boundaries") {
    std::vector<double> eta;
    for (int i = 0; i < 10; ++i) eta.push_back(static_cast<double>(i));
    const auto cuts = sample_cutpoints(eta, w, ev, 5, 4, 1, rng);
    // only eta in {3, 4, 5} leave >= 4 observations on both sides
    CHECK(cuts.size() == 3);
  }

  SUBCASE("event minima are honored") {
    std::vector<double> eta;
    std::vector<int> status(10, 0);
    for (int i = 0; i < 10; ++i) eta.push_back(static_cast<double>(i));
    status[0] = status[9] = 1;
    const auto cuts = sample_cutpoints(eta, w, status, 9, 1, 1, rng);
    REQUIRE(!cuts.empty());
    for (const double c : cuts) {
      CHECK(c >= eta[0]);
      CHECK(c < eta[9]);
    }
  }
}

TEST_CASE("best_cutpoint selection") {
  SUBCASE("single candidate") {
    const SplitData d = random_split_data(5, 20, false);
    const double cut = d.eta[3];
    const std::vector<double> cands{cut};
    const SplitCandidate best = best_cutpoint(d.eta, d.time, d.status, d.weights, cands);
    CHECK(best.cutpoint == cut);
    CHECK(best.stat == logrank_stat(d.eta, d.time, d.status, d.weights, cut));
  }

  SUBCASE("ties break to the smallest cutpoint") {
    // cutpoints 1.0 and 1.5 induce the same partition, hence equal stats
    const std::vector<double> eta{0, 0, 1, 1, 2, 2};
    const std::vector<double> time{1, 2, 3, 4, 5, 6};
    const std::vector<int> status{1, 1, 1, 1, 1, 1};
    const std::vector<double> w(6, 1.0);
    const std::vector<double> cands{1.5, 1.0};
    const SplitCandidate best = best_cutpoint(eta, time, status, w, cands);
    CHECK(best.cutpoint == 1.0);
  }

  SUBCASE("empty candidate list is an error") {
    const SplitData d = random_split_data(6, 10, false);
    CHECK_THROWS_AS(best_cutpoint(d.eta, d.time, d.status, d.weights, std::vector<double>{}), std::invalid_argument);
  }

  SUBCASE("agrees with exhaustive scan and ignores candidate order") {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const SplitData d = random_split_data(seed, 50, true);
      Rng rng(seed);
      // huge n_split returns every valid cutpoint
      const auto all = sample_cutpoints(d.eta, d.weights, d.status, 1 << 20, 1, 1, rng);
      REQUIRE(all.size() > 5);
      const SplitCandidate best = best_cutpoint(d.eta, d.time, d.status, d.weights, all);

      SplitCandidate brute;
      bool have = false;
      for (const double c : all) {
        const double stat = logrank_stat(d.eta, d.time, d.status, d.weights, c);
        if (!have || stat > brute.stat || (stat == brute.stat && c < brute.cutpoint)) {
          brute = {c, stat};
          have = true;
        }
      }
      CHECK(best.cutpoint == brute.cutpoint);
      CHECK(best.stat == brute.stat);

      std::vector<double> shuffled(all.begin(), all.end());
      rng.shuffle(shuffled);
      const SplitCandidate again = best_cutpoint(d.eta, d.time, d.status, d.weights, shuffled);
      CHECK(again.cutpoint == best.cutpoint);
      CHECK(again.stat == best.stat);
    }
  }
}
