// Copyright 2026 The tidiss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Result tables and their CSV / SVG renderings.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace tidiss {

using Cell = std::variant<double, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Metadata lines, written as "# " comments in order.
  std::vector<std::string> metadata;
  /// Written as the last metadata line; the only field that varies between
  /// reruns of the same configuration.
  std::string timestamp;
  int failed_rows = 0;

  int column_index(const std::string& name) const;  // -1 when absent
};

/// Writes metadata, header and rows. Doubles use the shortest round-trip
/// representation.
void write_csv(std::ostream& out, const ResultTable& table);

struct PlotSpec {
  std::string title;
  std::string x_column;
  std::string y_column;
  /// Rows sharing the values of these columns form one line.
  std::vector<std::string> series_columns;
};

/// Self-contained SVG line chart of table columns. Non-finite points are
/// skipped.
void write_svg(std::ostream& out, const ResultTable& table, const PlotSpec& spec);

/// Current UTC time as an ISO-8601 string.
std::string utc_timestamp();

}  // namespace tidiss
