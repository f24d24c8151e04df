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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qv {

/// A rectangular numeric table: `num_records` rows by `num_features` columns,
/// stored row-major.
struct Dataset {
  std::size_t num_records = 0;
  std::size_t num_features = 0;
  std::vector<double> values;              // row-major
  std::vector<std::string> feature_names;  // optional; empty or one per column

  double at(std::size_t record, std::size_t feature) const {
    return values[record * num_features + feature];
  }
  double& at(std::size_t record, std::size_t feature) {
    return values[record * num_features + feature];
  }

  std::vector<double> column(std::size_t feature) const {
    std::vector<double> out(num_records);
    for (std::size_t r = 0; r < num_records; ++r) out[r] = at(r, feature);
    return out;
  }

  std::vector<double> row(std::size_t record) const {
    return {values.begin() + static_cast<std::ptrdiff_t>(record * num_features),
            values.begin() + static_cast<std::ptrdiff_t>((record + 1) * num_features)};
  }

  void validate() const {
    if (num_records < 2) throw std::invalid_argument("dataset: needs at least 2 records");
    if (num_features == 0) throw std::invalid_argument("dataset: needs at least 1 feature");
    if (values.size() != num_records * num_features) {
      throw std::invalid_argument("dataset: value count does not match shape");
    }
    if (!feature_names.empty() && feature_names.size() != num_features) {
      throw std::invalid_argument("dataset: feature name count does not match shape");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        throw std::invalid_argument("dataset: non-finite entry at row " +
                                    std::to_string(i / num_features) + ", column " +
                                    std::to_string(i % num_features));
      }
    }
  }
};

}  // namespace qv
