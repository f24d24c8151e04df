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
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace qv {

/// An ordered list of distinct item ids, best first.
using Ranking = std::vector<std::size_t>;

namespace detail {

inline void check_distinct(const Ranking& r, const char* who) {
  std::unordered_set<std::size_t> seen;
  for (std::size_t id : r) {
    if (!seen.insert(id).second) throw std::invalid_argument(std::string(who) + ": duplicate id");
  }
}

}  // namespace detail

/// Extrapolated rank-biased overlap with persistence p, evaluated to depth
/// min(|r1|, |r2|): (1-p) * sum_d p^(d-1) A_d + A_k p^k, where A_d is the
/// fractional overlap of the depth-d prefixes. 1 for item-by-item identical
/// rankings, 0 for fully disjoint ones; top ranks dominate as p shrinks.
inline double rbo(const Ranking& r1, const Ranking& r2, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("rbo: p must lie in (0, 1)");
  detail::check_distinct(r1, "rbo");
  detail::check_distinct(r2, "rbo");
  const std::size_t depth = std::min(r1.size(), r2.size());
  if (depth == 0) throw std::invalid_argument("rbo: empty ranking");

  std::unordered_set<std::size_t> seen1;
  std::unordered_set<std::size_t> seen2;
  double overlap = 0.0;  // |head_d(r1) ∩ head_d(r2)|
  double sum = 0.0;
  double weight = 1.0;  // p^(d-1)
  double agreement = 0.0;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::size_t x1 = r1[d - 1];
    const std::size_t x2 = r2[d - 1];
    if (x1 == x2) {
      overlap += 1.0;
    } else {
      if (seen2.count(x1)) overlap += 1.0;
      if (seen1.count(x2)) overlap += 1.0;
      seen1.insert(x1);
      seen2.insert(x2);
    }
    agreement = overlap / static_cast<double>(d);
    sum += weight * agreement;
    weight *= p;
  }
  // weight is now p^depth; the extrapolation assumes the final agreement
  // persists beyond the evaluated prefix.
  return (1.0 - p) * sum + agreement * weight;
}

/// Fraction of features on which two kept/dropped decisions agree.
inline double accuracy(std::span<const std::size_t> kept_pred,
                       std::span<const std::size_t> kept_true, std::size_t total_features) {
  if (total_features == 0) throw std::invalid_argument("accuracy: no features");
  std::vector<char> pred(total_features, 0);
  std::vector<char> truth(total_features, 0);
  for (std::size_t f : kept_pred) {
    if (f >= total_features) throw std::invalid_argument("accuracy: feature index out of range");
    pred[f] = 1;
  }
  for (std::size_t f : kept_true) {
    if (f >= total_features) throw std::invalid_argument("accuracy: feature index out of range");
    truth[f] = 1;
  }
  std::size_t agree = 0;
  for (std::size_t f = 0; f < total_features; ++f) {
    if (pred[f] == truth[f]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(total_features);
}

struct ErrorStats {
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
};

inline ErrorStats error_stats(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("error_stats: inputs must be equal-length and non-empty");
  }
  ErrorStats out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    out.mae += d;
    out.mse += d * d;
  }
  out.mae /= static_cast<double>(a.size());
  out.mse /= static_cast<double>(a.size());
  out.rmse = std::sqrt(out.mse);
  return out;
}

/// Fraction of the top n of r1 also present in the top n of r2.
inline double precision_at_n(const Ranking& r1, const Ranking& r2, std::size_t n) {
  if (n == 0 || n > r1.size() || n > r2.size()) {
    throw std::invalid_argument("precision_at_n: n out of range");
  }
  detail::check_distinct(r1, "precision_at_n");
  detail::check_distinct(r2, "precision_at_n");
  std::unordered_set<std::size_t> head2(r2.begin(), r2.begin() + static_cast<std::ptrdiff_t>(n));
  std::size_t shared = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (head2.count(r1[i])) ++shared;
  }
  return static_cast<double>(shared) / static_cast<double>(n);
}

}  // namespace qv
