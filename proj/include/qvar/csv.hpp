// Copyright 2026 The qvar developers
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

#pragma once

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvar/dataset.hpp"

namespace qv {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline bool parse_double(const std::string& token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace detail

/// Loads a comma-separated numeric table. A single leading header line of
/// column names is detected by its first cell failing to parse as a number.
/// Ragged rows, empty cells, non-numeric cells and non-finite values are
/// reported with their row and column (1-based, counting the header).
inline Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);

  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (!saw_data) {
      double probe = 0.0;
      if (!detail::parse_double(cells[0], probe)) {
        data.feature_names = cells;
        continue;
      }
    }
    if (!saw_data) {
      data.num_features = cells.size();
      if (!data.feature_names.empty() && data.feature_names.size() != data.num_features) {
        throw std::runtime_error(path + ": header has " +
                                 std::to_string(data.feature_names.size()) + " names but row " +
                                 std::to_string(line_no) + " has " +
                                 std::to_string(cells.size()) + " columns");
      }
      saw_data = true;
    } else if (cells.size() != data.num_features) {
      throw std::runtime_error(path + ": ragged row " + std::to_string(line_no) + " (" +
                               std::to_string(cells.size()) + " columns, expected " +
                               std::to_string(data.num_features) + ")");
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!detail::parse_double(cells[c], v)) {
        throw std::runtime_error(path + ": non-numeric cell at row " + std::to_string(line_no) +
                                 ", column " + std::to_string(c + 1) + ": '" + cells[c] + "'");
      }
      if (!std::isfinite(v)) {
        throw std::runtime_error(path + ": non-finite value at row " + std::to_string(line_no) +
                                 ", column " + std::to_string(c + 1));
      }
      data.values.push_back(v);
    }
    ++data.num_records;
  }
  if (!saw_data) throw std::runtime_error(path + ": no data rows");
  data.validate();
  return data;
}

inline void save_csv(const std::string& path, const Dataset& data, bool with_header = false) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << std::setprecision(17);
  if (with_header && !data.feature_names.empty()) {
    for (std::size_t c = 0; c < data.num_features; ++c) {
      out << (c ? "," : "") << data.feature_names[c];
    }
    out << '\n';
  }
  for (std::size_t r = 0; r < data.num_records; ++r) {
    for (std::size_t c = 0; c < data.num_features; ++c) {
      out << (c ? "," : "") << data.at(r, c);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qv
