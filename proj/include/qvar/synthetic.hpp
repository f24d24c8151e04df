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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvar/dataset.hpp"
#include "qvar/rng.hpp"

namespace qv {

/// Feature-selection benchmark data: `informative` columns drawn uniformly
/// from [-1, 1] next to `uninformative` low-variance Gaussian noise columns.
struct SynthFsSpec {
  std::size_t records = 32;
  std::size_t informative = 7;
  std::size_t uninformative = 3;
  double noise_sigma = 0.05;
  std::uint64_t seed = 0;
};

/// Each column is generated from its own derived random stream, so the data
/// is a pure function of the spec and stable across platforms.
inline Dataset gen_fs(const SynthFsSpec& spec) {
  if (spec.records < 2) throw std::invalid_argument("gen_fs: need at least 2 records");
  if (spec.noise_sigma <= 0.0) throw std::invalid_argument("gen_fs: sigma must be positive");
  const std::size_t total = spec.informative + spec.uninformative;
  if (total == 0) throw std::invalid_argument("gen_fs: no features requested");

  Dataset data;
  data.num_records = spec.records;
  data.num_features = total;
  data.values.assign(spec.records * total, 0.0);
  for (std::size_t c = 0; c < total; ++c) {
    Rng rng(derive_stream(spec.seed, c));
    const bool informative = c < spec.informative;
    for (std::size_t r = 0; r < spec.records; ++r) {
      data.at(r, c) = informative ? rng.uniform(-1.0, 1.0) : rng.normal(0.0, spec.noise_sigma);
    }
    data.feature_names.push_back("f" + std::to_string(c));
  }
  return data;
}

/// Outlier-detection benchmark data: a tight Gaussian inlier cluster
/// (sigma = 0.5, the convention of the standard synthetic outlier
/// benchmarks) plus ceil(contamination * records) uniform outliers over
/// [-6, 6]^dims, kept clearly separated from the cluster.
struct SynthOdSpec {
  std::size_t records = 100;
  std::size_t dims = 2;
  double contamination = 0.1;
  double inlier_sigma = 0.5;
  std::uint64_t seed = 0;
};

struct OdData {
  Dataset data;
  std::vector<std::size_t> outlier_indices;  // ground-truth labels
};

inline OdData gen_od(const SynthOdSpec& spec) {
  if (spec.records < 2) throw std::invalid_argument("gen_od: need at least 2 records");
  if (spec.dims == 0) throw std::invalid_argument("gen_od: dims must be positive");
  if (spec.contamination <= 0.0 || spec.contamination >= 1.0) {
    throw std::invalid_argument("gen_od: contamination must lie in (0, 1)");
  }
  const auto num_outliers = static_cast<std::size_t>(
      std::ceil(spec.contamination * static_cast<double>(spec.records)));
  if (num_outliers >= spec.records) {
    throw std::invalid_argument("gen_od: contamination leaves no inliers");
  }
  const std::size_t num_inliers = spec.records - num_outliers;

  OdData out;
  out.data.num_records = spec.records;
  out.data.num_features = spec.dims;
  out.data.values.assign(spec.records * spec.dims, 0.0);

  if (spec.inlier_sigma <= 0.0) throw std::invalid_argument("gen_od: sigma must be positive");
  Rng inlier_rng(derive_stream(spec.seed, 0));
  for (std::size_t r = 0; r < num_inliers; ++r) {
    for (std::size_t c = 0; c < spec.dims; ++c) {
      out.data.at(r, c) = inlier_rng.normal(0.0, spec.inlier_sigma);
    }
  }
  // Outliers are re-drawn until some coordinate clears |x| >= 4, so every
  // planted point is genuinely distant from the inlier cluster.
  Rng outlier_rng(derive_stream(spec.seed, 1));
  for (std::size_t r = num_inliers; r < spec.records; ++r) {
    while (true) {
      bool deviant = false;
      for (std::size_t c = 0; c < spec.dims; ++c) {
        const double v = outlier_rng.uniform(-6.0, 6.0);
        out.data.at(r, c) = v;
        if (std::abs(v) >= 4.0) deviant = true;
      }
      if (deviant) break;
    }
    out.outlier_indices.push_back(r);
  }
  return out;
}

}  // namespace qv
