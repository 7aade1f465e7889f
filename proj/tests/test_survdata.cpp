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

#include <cstdio>
#include <fstream>

#include "obliqforest/rng.hpp"
#include "obliqforest/survdata.hpp"
#include "obliqforest/types.hpp"

using namespace obliqforest;

namespace {

std::string temp_path(const std::string& name) { return "/tmp/obliqforest_test_" + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

SurvivalDataset random_dataset(std::uint64_t seed, int n, int p) {
  Rng rng(seed);
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd time(n);
  Eigen::VectorXi status(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
    time[i] = 0.1 + rng.uniform() * 5.0;
    status[i] = rng.uniform() < 0.7 ? 1 : 0;
  }
  status[0] = 1;
  std::vector<std::string> names;
  for (int j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
  return SurvivalDataset::create(x, time, status, names);
}

}  // namespace

TEST_CASE("load_csv computes sort_index with events before censorings") {
  const std::string path = temp_path("basic.csv");
  write_file(path, "a,time,status\n1,2,1\n2,1,0\n3,3,1\n");
  const SurvivalDataset ds = load_csv(path, "time", "status");
  CHECK(ds.n() == 3);
  CHECK(ds.p() == 1);
  CHECK(ds.col_names == std::vector<std::string>{"a"});
  CHECK(ds.sort_index == std::vector<int>{1, 0, 2});
}

TEST_CASE("tied times sort events first") {
  const std::string path = temp_path("ties.csv");
  write_file(path, "a,time,status\n1,2,0\n2,2,1\n3,1,1\n");
  const SurvivalDataset ds = load_csv(path, "time", "status");
  CHECK(ds.sort_index == std::vector<int>{2, 1, 0});
}

TEST_CASE("load_csv rejects invalid inputs") {
  const std::string path = temp_path("bad.csv");

  write_file(path, "a,time,status\n1,2,2\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "time", "status"), doctest::Contains("invalid status"), std::invalid_argument);

  write_file(path, "a,time,status\n1,2,0\n2,1,0\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "time", "status"), doctest::Contains("no events"), std::invalid_argument);

  write_file(path, "a,time,status\n1,0,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "time", "status"), doctest::Contains("invalid time"), std::invalid_argument);

  write_file(path, "a,time,status\n1,-3,1\n");
  CHECK_THROWS_AS(load_csv(path, "time", "status"), std::invalid_argument);

  write_file(path, "a,a,time,status\n1,1,2,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "time", "status"), doctest::Contains("duplicate column"), std::invalid_argument);

  write_file(path, "a,time,status\n1,oops,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "time", "status"), doctest::Contains("non-numeric"), std::runtime_error);

  // from_chars parses "nan"/"inf" tokens; the dataset must still reject them
  write_file(path, "a,time,status\nnan,2,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "time", "status"), doctest::Contains("non-finite"), std::invalid_argument);

  write_file(path, "a,time,status\n1,inf,1\n");
  CHECK_THROWS_AS(load_csv(path, "time", "status"), std::invalid_argument);

  write_file(path, "a,time,status\n1,2,1\n");
  CHECK_THROWS_AS(load_csv(path, "time", "missing_col"), std::invalid_argument);

  CHECK_THROWS_AS(load_csv(temp_path("does_not_exist.csv"), "time", "status"), IoError);
}

TEST_CASE("event_times basics") {
  auto make = [](std::vector<double> time, std::vector<int> status) {
    const int n = static_cast<int>(time.size());
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, 1);
    for (int i = 0; i < n; ++i) x(i, 0) = i;
    return SurvivalDataset::create(x, Eigen::Map<Eigen::VectorXd>(time.data(), n),
                                   Eigen::Map<Eigen::VectorXi>(status.data(), n), {"x1"});
  };
  CHECK(event_times(make({1, 2, 2, 3}, {1, 1, 0, 1})) == std::vector<double>{1, 2, 3});
  CHECK(event_times(make({5}, {1})) == std::vector<double>{5});
  CHECK(event_times(make({1, 1, 1}, {1, 1, 1})) == std::vector<double>{1});
}

TEST_CASE("write_csv then load_csv is the identity") {
  const std::string path = temp_path("roundtrip.csv");
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const SurvivalDataset ds = random_dataset(seed, 40, 3);
    write_csv(ds, path, "time", "status", "roundtrip check");
    const SurvivalDataset back = load_csv(path, "time", "status");
    REQUIRE(back.n() == ds.n());
    REQUIRE(back.p() == ds.p());
    CHECK(back.col_names == ds.col_names);
    CHECK(back.x == ds.x);
    CHECK(back.time == ds.time);
    CHECK(back.status == ds.status);
    CHECK(back.sort_index == ds.sort_index);
  }
}

TEST_CASE("event_times is a strictly increasing subset of the time vector") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SurvivalDataset ds = random_dataset(seed, 60, 2);
    const auto ev = event_times(ds);
    REQUIRE(!ev.empty());
    for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i] > ev[i - 1]);
    for (const double t : ev) {
      bool found = false;
      for (int i = 0; i < ds.n(); ++i) {
        if (ds.time[i] == t && ds.status[i] == 1) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("sort_index orders time ascending") {
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    const SurvivalDataset ds = random_dataset(seed, 50, 2);
    for (int i = 1; i < ds.n(); ++i) {
      CHECK(ds.time[ds.sort_index[static_cast<std::size_t>(i)]] >=
            ds.time[ds.sort_index[static_cast<std::size_t>(i - 1)]]);
    }
  }
}
