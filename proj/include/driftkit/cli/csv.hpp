// Copyright 2026, The driftkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "driftkit/cli/json_io.hpp"
#include "driftkit/data_drift/multivariate.hpp"

namespace driftkit::cli {

// Delimiter-separated values with a mandatory header row. Cells are plain
// tokens (no quoting); whitespace around cells is trimmed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  for (char c : line) {
    if (c == delim) {
      out.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  out.push_back(trim(cell));
  return out;
}

inline std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

inline CsvTable read_csv(const std::filesystem::path& path, char delimiter = ',') {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path.string());
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!have_header) {
      table.header = detail::split(line, delimiter);
      have_header = true;
      continue;
    }
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(line, delimiter);
    if (cells.size() != table.header.size()) {
      throw DataError(path.string() + ": row " + std::to_string(table.rows.size() + 2) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header || table.header.empty()) throw DataError(path.string() + ": missing header row");
  if (table.rows.empty()) throw DataError(path.string() + ": no data rows");
  return table;
}

// Column kinds: a column is categorical when any value fails numeric parsing,
// unless the override map pins the kind ("numeric" forced on an unparseable
// column is a data error).
inline data_drift::Frame to_frame(const CsvTable& table,
                                  const std::map<std::string, std::string>& kind_overrides = {},
                                  const std::vector<std::string>& feature_subset = {}) {
  std::vector<std::size_t> selected;
  if (feature_subset.empty()) {
    for (std::size_t c = 0; c < table.header.size(); ++c) selected.push_back(c);
  } else {
    for (const std::string& want : feature_subset) {
      bool found = false;
      for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == want) {
          selected.push_back(c);
          found = true;
          break;
        }
      }
      if (!found) throw DataError("feature not in header: " + want);
    }
  }

  data_drift::Frame frame;
  for (std::size_t c : selected) {
    data_drift::FeatureColumn col;
    col.name = table.header[c];
    std::vector<std::optional<double>> parsed;
    parsed.reserve(table.rows.size());
    bool all_numeric = true;
    for (const auto& row : table.rows) {
      auto v = detail::parse_number(row[c]);
      if (!v.has_value()) all_numeric = false;
      parsed.push_back(v);
    }
    bool categorical = !all_numeric;
    const auto it = kind_overrides.find(col.name);
    if (it != kind_overrides.end()) {
      if (it->second == "categorical") {
        categorical = true;
      } else if (it->second == "numeric") {
        if (!all_numeric) {
          throw DataError("column '" + col.name + "' forced numeric but has non-numeric values");
        }
        categorical = false;
      } else {
        throw UsageError("unknown column kind override: " + it->second);
      }
    }
    col.categorical = categorical;
    if (categorical) {
      for (const auto& row : table.rows) col.labels.push_back(row[c]);
    } else {
      for (const auto& v : parsed) col.numbers.push_back(*v);
    }
    frame.push_back(std::move(col));
  }
  return frame;
}

}  // namespace driftkit::cli
