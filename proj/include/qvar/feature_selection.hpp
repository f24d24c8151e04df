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

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "qvar/dataset.hpp"
#include "qvar/rng.hpp"
#include "qvar/variance.hpp"

namespace qv {

/// Feature indices ordered by ascending variance (most discardable first);
/// ties broken by ascending index.
inline std::vector<std::size_t> feature_ranking(std::span<const double> variances) {
  std::vector<std::size_t> order(variances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return variances[a] < variances[b]; });
  return order;
}

struct FeatureSelectionResult {
  std::vector<double> variances;
  std::vector<std::size_t> kept;     // ascending feature index
  std::vector<std::size_t> dropped;  // ascending feature index; variance <= threshold
  std::vector<std::size_t> ranking;  // ascending variance
  std::vector<VarianceEstimate> estimates;
};

namespace detail {

inline FeatureSelectionResult partition_by_threshold(std::vector<double> variances,
                                                     double threshold,
                                                     std::vector<VarianceEstimate> estimates) {
  FeatureSelectionResult out;
  out.variances = std::move(variances);
  out.estimates = std::move(estimates);
  for (std::size_t f = 0; f < out.variances.size(); ++f) {
    (out.variances[f] <= threshold ? out.dropped : out.kept).push_back(f);
  }
  out.ranking = feature_ranking(out.variances);
  return out;
}

}  // namespace detail

/// Variance-threshold feature selection with one independent variance-oracle
/// estimate per feature column. Each column uses its own derived random
/// stream, so results do not depend on evaluation order.
inline FeatureSelectionResult hqfs(const Dataset& data, double threshold,
                                   const EstimatorConfig& config) {
  data.validate();
  if (threshold < 0.0) throw std::invalid_argument("hqfs: threshold must be >= 0");
  std::vector<double> variances(data.num_features);
  std::vector<VarianceEstimate> estimates(data.num_features);
  for (std::size_t f = 0; f < data.num_features; ++f) {
    EstimatorConfig per_feature = config;
    per_feature.seed = derive_stream(config.seed, f);
    estimates[f] = estimate_variance(data.column(f), per_feature);
    variances[f] = estimates[f].variance;
  }
  return detail::partition_by_threshold(std::move(variances), threshold, std::move(estimates));
}

/// Classical reference selector: same contract with the two-pass variance.
inline FeatureSelectionResult classical_feature_selection(const Dataset& data, double threshold) {
  data.validate();
  if (threshold < 0.0) {
    throw std::invalid_argument("classical_feature_selection: threshold must be >= 0");
  }
  std::vector<double> variances(data.num_features);
  for (std::size_t f = 0; f < data.num_features; ++f) {
    variances[f] = classical_variance(data.column(f));
  }
  return detail::partition_by_threshold(std::move(variances), threshold, {});
}

/// Deterministic without-replacement sample of `sample_size` record indices.
inline Dataset sample_records(const Dataset& data, std::size_t sample_size, std::uint64_t seed) {
  data.validate();
  if (sample_size < 2 || sample_size > data.num_records) {
    throw std::invalid_argument("sample_records: sample size out of range");
  }
  std::vector<std::size_t> indices(data.num_records);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = data.num_records - 1; i > 0; --i) {
    const std::size_t j = rng.below(i + 1);
    std::swap(indices[i], indices[j]);
  }
  Dataset out;
  out.num_records = sample_size;
  out.num_features = data.num_features;
  out.feature_names = data.feature_names;
  out.values.reserve(sample_size * data.num_features);
  for (std::size_t r = 0; r < sample_size; ++r) {
    for (std::size_t c = 0; c < data.num_features; ++c) {
      out.values.push_back(data.at(indices[r], c));
    }
  }
  return out;
}

}  // namespace qv
