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

#include <string>
#include <vector>

namespace obliqforest {

/// Numeric CSV with a mandatory header row. Leading '#' comment lines and
/// blank lines are skipped on read; cells are comma separated, unquoted,
/// '.' decimal separator.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // row-major, rectangular
};

CsvTable read_csv(const std::string& path);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Writes comment (if non-empty, one '#'-prefixed line), header, then rows
/// with round-trip-exact numeric formatting.
void write_csv(const std::string& path, const std::string& comment, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Same as write_csv but with preformatted string cells.
void write_csv_strings(const std::string& path, const std::string& comment, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

}  // namespace obliqforest
