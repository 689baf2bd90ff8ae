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

#include "tidiss/report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <map>
#include <ostream>

#include "tidiss/errors.hpp"
#include "tidiss/format.hpp"

namespace tidiss {

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Fixed-precision tick labels; plots are not part of the data contract.
std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

int ResultTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (const auto& m : table.metadata) out << "# " << m << '\n';
  if (!table.timestamp.empty()) out << "# generated: " << table.timestamp << '\n';
  for (size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_svg(std::ostream& out, const ResultTable& table, const PlotSpec& spec) {
  const int xi = table.column_index(spec.x_column);
  const int yi = table.column_index(spec.y_column);
  if (xi < 0 || yi < 0) throw InvalidArgument("write_svg: unknown plot column");
  std::vector<int> si;
  for (const auto& s : spec.series_columns) {
    const int k = table.column_index(s);
    if (k < 0) throw InvalidArgument("write_svg: unknown series column '" + s + "'");
    si.push_back(k);
  }

  // Series in order of first appearance.
  std::vector<std::string> names;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& row : table.rows) {
    const auto* x = std::get_if<double>(&row[static_cast<size_t>(xi)]);
    const auto* y = std::get_if<double>(&row[static_cast<size_t>(yi)]);
    if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) continue;
    std::string name;
    for (size_t k = 0; k < si.size(); ++k)
      name += (k ? " " : "") + spec.series_columns[k] + "=" +
              cell_text(row[static_cast<size_t>(si[k])]);
    if (!series.count(name)) names.push_back(name);
    series[name].emplace_back(*x, *y);
    x0 = std::min(x0, *x);
    x1 = std::max(x1, *x);
    y0 = std::min(y0, *y);
    y1 = std::max(y1, *y);
  }
  if (names.empty()) {
    x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + (y0 == 0.0 ? 1.0 : std::abs(y0));
  y0 = std::min(y0, 0.0);

  const double w = 720, h = 440, left = 70, right = 190, top = 40, bottom = 50;
  const double pw = w - left - right, ph = h - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"22\" font-size=\"14\">" << escape_xml(spec.title)
      << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
    out << "<text x=\"" << sx(xv) << "\" y=\"" << top + ph + 16
        << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
        << tick(yv) << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">"
      << escape_xml(spec.x_column) << "</text>\n";
  out << "<text transform=\"translate(16," << top + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(spec.y_column) << "</text>\n";
  for (size_t k = 0; k < names.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    auto pts = series[names[k]];
    std::stable_sort(pts.begin(), pts.end());
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : pts)
      out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\"" << color
          << "\"/>\n";
    const double ly = top + 12 + 16.0 * static_cast<double>(k);
    out << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 30
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly << "\">" << escape_xml(names[k])
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace tidiss
