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

#include "obliqforest/survdata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "obliqforest/csv.hpp"

namespace obliqforest {

SurvivalDataset SurvivalDataset::create(Eigen::MatrixXd x, Eigen::VectorXd time, Eigen::VectorXi status,
                                        std::vector<std::string> col_names) {
  const auto n = time.size();
  if (x.rows() != n || status.size() != n) throw std::invalid_argument("row count mismatch between predictors and outcome");
  if (static_cast<Eigen::Index>(col_names.size()) != x.cols()) {
    throw std::invalid_argument("column name count does not match predictor count");
  }
  if (n == 0) throw std::invalid_argument("empty dataset");

  std::set<std::string> seen;
  for (const auto& name : col_names) {
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate column name: " + name);
  }
  if (!x.allFinite()) throw std::invalid_argument("non-finite predictor value");
  int n_events = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(time[i]) || time[i] <= 0.0) throw std::invalid_argument("invalid time: times must be finite and > 0");
    if (status[i] != 0 && status[i] != 1) throw std::invalid_argument("invalid status: values must be 0 or 1");
    n_events += status[i];
  }
  if (n_events == 0) throw std::invalid_argument("no events: at least one row must have status 1");

  SurvivalDataset ds;
  ds.x = std::move(x);
  ds.time = std::move(time);
  ds.status = std::move(status);
  ds.col_names = std::move(col_names);
  ds.sort_index.resize(static_cast<std::size_t>(n));
  std::iota(ds.sort_index.begin(), ds.sort_index.end(), 0);
  std::stable_sort(ds.sort_index.begin(), ds.sort_index.end(), [&](int a, int b) {
    if (ds.time[a] != ds.time[b]) return ds.time[a] < ds.time[b];
    return ds.status[a] > ds.status[b];  // events first at ties
  });
  return ds;
}

SurvivalDataset load_csv(const std::string& path, const std::string& time_col, const std::string& status_col) {
  const CsvTable table = read_csv(path);
  int time_idx = -1, status_idx = -1;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (table.header[j] == time_col) time_idx = static_cast<int>(j);
    if (table.header[j] == status_col) status_idx = static_cast<int>(j);
  }
  if (time_idx < 0) throw std::invalid_argument("time column not found: " + time_col);
  if (status_idx < 0) throw std::invalid_argument("status column not found: " + status_col);
  if (time_idx == status_idx) throw std::invalid_argument("time and status columns must differ");

  const int n = static_cast<int>(table.rows.size());
  const int p = static_cast<int>(table.header.size()) - 2;
  if (n == 0) throw std::invalid_argument("empty dataset");
  if (p < 1) throw std::invalid_argument("no predictor columns");

  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd time(n);
  Eigen::VectorXi status(n);
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(p));
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    const int ji = static_cast<int>(j);
    if (ji != time_idx && ji != status_idx) names.push_back(table.header[j]);
  }
  for (int i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    time[i] = row[static_cast<std::size_t>(time_idx)];
    const double s = row[static_cast<std::size_t>(status_idx)];
    if (s != 0.0 && s != 1.0) throw std::invalid_argument("invalid status: values must be 0 or 1");
    status[i] = static_cast<int>(s);
    int col = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const int ji = static_cast<int>(j);
      if (ji == time_idx || ji == status_idx) continue;
      x(i, col++) = row[j];
    }
  }
  return SurvivalDataset::create(std::move(x), std::move(time), std::move(status), std::move(names));
}

void write_csv(const SurvivalDataset& ds, const std::string& path, const std::string& time_col,
               const std::string& status_col, const std::string& comment) {
  std::vector<std::string> header = ds.col_names;
  header.push_back(time_col);
  header.push_back(status_col);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(ds.n()));
  for (int i = 0; i < ds.n(); ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(ds.p()) + 2);
    for (int j = 0; j < ds.p(); ++j) row.push_back(ds.x(i, j));
    row.push_back(ds.time[i]);
    row.push_back(static_cast<double>(ds.status[i]));
  }
  write_csv(path, comment, header, rows);
}

std::vector<double> event_times(const SurvivalDataset& ds) {
  std::vector<double> times;
  for (int i = 0; i < ds.n(); ++i) {
    if (ds.status[i] == 1) times.push_back(ds.time[i]);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace obliqforest
