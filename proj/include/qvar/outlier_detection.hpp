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
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "qvar/dataset.hpp"
#include "qvar/feature_selection.hpp"
#include "qvar/rng.hpp"
#include "qvar/variance.hpp"

namespace qv {

/// Inverse stereographic projection of an N-vector onto the unit sphere in
/// N+1 dimensions: (2v, ||v||^2 - 1) / (1 + ||v||^2). The zero vector maps to
/// the south pole (0, ..., 0, -1).
inline std::vector<double> isp(std::span<const double> v) {
  double norm_sq = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("isp: non-finite entry");
    norm_sq += x * x;
  }
  const double denom = 1.0 + norm_sq;
  std::vector<double> out(v.size() + 1);
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = 2.0 * v[k] / denom;
  out[v.size()] = (norm_sq - 1.0) / denom;
  return out;
}

/// All records translated by the pivot and projected onto the unit sphere.
/// Every row has unit norm; the pivot row itself sits at the south pole.
struct ProjectedDataset {
  std::size_t pivot = 0;
  std::size_t num_records = 0;
  std::size_t dim = 0;  // original feature count + 1
  std::vector<double> values;

  double at(std::size_t record, std::size_t k) const { return values[record * dim + k]; }
  std::span<const double> row(std::size_t record) const {
    return {values.data() + record * dim, dim};
  }
};

inline ProjectedDataset translate_and_project(const Dataset& data, std::size_t pivot) {
  data.validate();
  if (pivot >= data.num_records) throw std::invalid_argument("pivot index out of range");
  ProjectedDataset out;
  out.pivot = pivot;
  out.num_records = data.num_records;
  out.dim = data.num_features + 1;
  out.values.reserve(out.num_records * out.dim);
  std::vector<double> diff(data.num_features);
  for (std::size_t r = 0; r < data.num_records; ++r) {
    for (std::size_t c = 0; c < data.num_features; ++c) {
      diff[c] = data.at(r, c) - data.at(pivot, c);
    }
    const std::vector<double> projected = isp(diff);
    out.values.insert(out.values.end(), projected.begin(), projected.end());
  }
  return out;
}

namespace detail {

inline double clamped_acos(double c) {
  return std::acos(std::min(1.0, std::max(-1.0, c)));
}

inline double row_inner(const ProjectedDataset& p, std::size_t i, std::size_t j) {
  double dot = 0.0;
  for (std::size_t k = 0; k < p.dim; ++k) dot += p.at(i, k) * p.at(j, k);
  return dot;
}

}  // namespace detail

/// Angles between all projected record pairs i < j (pivot excluded), in row
/// order. Inner products are clamped to [-1, 1] before acos.
inline std::vector<double> classical_angles(const ProjectedDataset& p) {
  std::vector<double> angles;
  for (std::size_t i = 0; i < p.num_records; ++i) {
    if (i == p.pivot) continue;
    for (std::size_t j = i + 1; j < p.num_records; ++j) {
      if (j == p.pivot) continue;
      angles.push_back(detail::clamped_acos(detail::row_inner(p, i, j)));
    }
  }
  return angles;
}

enum class AbodMode { Angle, Cosine };

/// Classical angle-based outlier scores: per pivot, the population variance
/// of the pairwise angles (or of their cosines) seen from that pivot. Small
/// scores mark likely outliers.
inline std::vector<double> classical_abod_scores(const Dataset& data, AbodMode mode) {
  data.validate();
  if (data.num_records < 3) throw std::invalid_argument("abod: need at least 3 records");
  std::vector<double> scores(data.num_records);
  for (std::size_t pivot = 0; pivot < data.num_records; ++pivot) {
    const ProjectedDataset p = translate_and_project(data, pivot);
    std::vector<double> values = classical_angles(p);
    if (mode == AbodMode::Cosine) {
      for (double& v : values) v = std::cos(v);
    }
    scores[pivot] = classical_variance(values);
  }
  return scores;
}

/// Variance of the scaled difference components over ordered pairs
/// i, j != pivot (the closed form; the mean vanishes by antisymmetry):
/// sum_{i,j != p} ||x_i - x_j||^2 / ((M-1)^2 (N+1)).
inline double classical_delta_variance(const ProjectedDataset& p) {
  if (p.num_records < 2) throw std::invalid_argument("delta variance: need at least 2 records");
  const double m1 = static_cast<double>(p.num_records - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < p.num_records; ++i) {
    if (i == p.pivot) continue;
    for (std::size_t j = i + 1; j < p.num_records; ++j) {
      if (j == p.pivot) continue;
      double dist_sq = 0.0;
      for (std::size_t k = 0; k < p.dim; ++k) {
        const double d = p.at(i, k) - p.at(j, k);
        dist_sq += d * d;
      }
      total += 2.0 * dist_sq;  // ordered pairs (i,j) and (j,i)
    }
  }
  return total / (m1 * m1 * static_cast<double>(p.dim));
}

/// Both sides of the angle bound: the difference variance is at most
/// (Var(theta) + E[theta]^2) / (N+1), with the angle moments taken over
/// ordered pairs i, j != pivot including the zero diagonal.
struct BoundCheck {
  double delta_variance = 0.0;  // lhs
  double angle_bound = 0.0;     // rhs
  double gap = 0.0;             // rhs - lhs, >= 0
};

inline BoundCheck check_bound(const ProjectedDataset& p) {
  if (p.num_records < 3) throw std::invalid_argument("check_bound: need at least 3 records");
  const double m1 = static_cast<double>(p.num_records - 1);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < p.num_records; ++i) {
    if (i == p.pivot) continue;
    for (std::size_t j = i + 1; j < p.num_records; ++j) {
      if (j == p.pivot) continue;
      const double theta = detail::clamped_acos(detail::row_inner(p, i, j));
      sum += 2.0 * theta;  // ordered pairs; the diagonal contributes zeros
      sum_sq += 2.0 * theta * theta;
    }
  }
  const double pairs = m1 * m1;
  const double mean = sum / pairs;
  const double mean_sq = sum_sq / pairs;
  const double variance = mean_sq - mean * mean;

  BoundCheck out;
  out.delta_variance = classical_delta_variance(p);
  out.angle_bound = (variance + mean * mean) / static_cast<double>(p.dim);
  out.gap = out.angle_bound - out.delta_variance;
  return out;
}

/// The difference-superposition preparation: one branch flag qubit d plus
/// registers k (components), i and j (records). Starting from |0...0>, the
/// circuit encodes the projected dataset onto (j, k) in one branch of d and
/// onto (i, k) in the other, each next to a uniform spread of the remaining
/// record register; the final Hadamard on d leaves, on the d = 1 branch,
/// amplitude scale * (x_j - x_i)_k at |j, i, k>.
struct DifferenceStatePrep {
  Circuit circuit;
  int flag_qubit = 0;
  std::vector<int> index_qubits;  // k bits, then i bits, then j bits
  double scale = 0.0;             // the constant relating amplitudes to differences
  std::size_t padded_records = 0;
  std::size_t padded_dim = 0;
};

inline DifferenceStatePrep build_difference_stateprep(const ProjectedDataset& p) {
  if (p.num_records < 2) throw std::invalid_argument("difference prep: need at least 2 records");
  int m = 0;
  while ((std::size_t{1} << m) < p.num_records) ++m;
  m = std::max(m, 1);
  int n = 0;
  while ((std::size_t{1} << n) < p.dim) ++n;
  n = std::max(n, 1);
  const std::size_t rows = std::size_t{1} << m;
  const std::size_t cols = std::size_t{1} << n;
  if (2 * m + n + 1 > 28) throw std::invalid_argument("difference prep: too many qubits");

  // |D> over (record, component), record bits above component bits;
  // rows beyond the data and components beyond N+1 are zero-padded.
  std::vector<double> flat(rows * cols, 0.0);
  double frob_sq = 0.0;
  for (std::size_t r = 0; r < p.num_records; ++r) {
    for (std::size_t k = 0; k < p.dim; ++k) {
      flat[r * cols + k] = p.at(r, k);
      frob_sq += p.at(r, k) * p.at(r, k);
    }
  }
  if (frob_sq == 0.0) throw std::invalid_argument("difference prep: zero dataset");

  DifferenceStatePrep out;
  out.padded_records = rows;
  out.padded_dim = cols;
  const int k0 = 0;
  const int i0 = n;
  const int j0 = n + m;
  const int flag = n + 2 * m;
  out.flag_qubit = flag;
  for (int b = 0; b < n + 2 * m; ++b) out.index_qubits.push_back(b);

  Circuit c(flag + 1);
  c.add_register("k", {k0, n});
  c.add_register("i", {i0, m});
  c.add_register("j", {j0, m});
  c.add_register("d", {flag, 1});

  std::vector<int> jk_targets;
  for (int b = 0; b < n; ++b) jk_targets.push_back(k0 + b);
  for (int b = 0; b < m; ++b) jk_targets.push_back(j0 + b);
  std::vector<int> ik_targets;
  for (int b = 0; b < n; ++b) ik_targets.push_back(k0 + b);
  for (int b = 0; b < m; ++b) ik_targets.push_back(i0 + b);

  c.add(Gate::h(flag));
  // d = 1 branch: data on (j, k), uniform over i.
  for (int b = 0; b < m; ++b) c.add(Gate::controlled_h(flag, i0 + b));
  Gate prep_jk = amplitude_encode(flat, jk_targets);
  prep_jk.controls.push_back({flag, true});
  c.add(std::move(prep_jk));
  c.add(Gate::x(flag));
  // former d = 0 branch: data on (i, k), uniform over j.
  for (int b = 0; b < m; ++b) c.add(Gate::controlled_h(flag, j0 + b));
  Gate prep_ik = amplitude_encode(flat, ik_targets);
  prep_ik.controls.push_back({flag, true});
  c.add(std::move(prep_ik));
  c.add(Gate::h(flag));

  out.circuit = std::move(c);
  out.scale = 1.0 / (2.0 * std::sqrt(static_cast<double>(rows) * frob_sq));
  return out;
}

/// Mean of the squared padded differences (x_j - x_i)_k over the full
/// (j, i, k) tensor. The encoded differences have zero mean by antisymmetry,
/// so the oracle's good-state probability is sum(amp^2) / (4 * cells) and the
/// deterministic calibration back to the mean of squares is 4 / scale^2.
inline double quantum_outlier_factor(const ProjectedDataset& p, const EstimatorConfig& config) {
  const DifferenceStatePrep prep = build_difference_stateprep(p);
  GoodState flag_good{{{prep.flag_qubit, true}}};
  const AmplitudeEstimate est =
      qvar_raw_amplitude(prep.circuit, prep.index_qubits, flag_good, config);
  const double to_mean_of_squares = 4.0 / (prep.scale * prep.scale);
  return to_mean_of_squares * est.a_hat;
}

struct OutlierResult {
  std::vector<double> scores;           // quantum outlier factor per pivot
  std::vector<std::size_t> ranking;     // ascending score: most anomalous first
  std::vector<std::size_t> outliers;    // score <= threshold
  std::vector<double> angle_scores;     // optional classical comparison
  std::vector<double> delta_scores;     // optional classical comparison
  bool has_classical = false;
};

/// Ranks every record by its quantum outlier factor. Each pivot uses its own
/// derived random stream; records with score <= threshold are flagged.
inline OutlierResult qoda(const Dataset& data, double threshold, const EstimatorConfig& config,
                          bool with_classical_scores = false) {
  data.validate();
  if (data.num_records < 3) throw std::invalid_argument("qoda: need at least 3 records");
  OutlierResult out;
  out.scores.resize(data.num_records);
  for (std::size_t pivot = 0; pivot < data.num_records; ++pivot) {
    const ProjectedDataset p = translate_and_project(data, pivot);
    EstimatorConfig per_pivot = config;
    per_pivot.seed = derive_stream(config.seed, pivot);
    out.scores[pivot] = quantum_outlier_factor(p, per_pivot);
  }
  out.ranking = feature_ranking(out.scores);
  for (std::size_t pivot = 0; pivot < data.num_records; ++pivot) {
    if (out.scores[pivot] <= threshold) out.outliers.push_back(pivot);
  }
  if (with_classical_scores) {
    out.has_classical = true;
    out.angle_scores = classical_abod_scores(data, AbodMode::Angle);
    out.delta_scores.resize(data.num_records);
    for (std::size_t pivot = 0; pivot < data.num_records; ++pivot) {
      out.delta_scores[pivot] = classical_delta_variance(translate_and_project(data, pivot));
    }
  }
  return out;
}

/// Threshold that flags exactly the bottom ceil(contamination * M) scores.
inline double threshold_for_contamination(std::span<const double> scores, double contamination) {
  if (scores.empty()) throw std::invalid_argument("threshold_for_contamination: no scores");
  if (contamination <= 0.0 || contamination >= 1.0) {
    throw std::invalid_argument("threshold_for_contamination: contamination must lie in (0, 1)");
  }
  const auto flagged = static_cast<std::size_t>(
      std::ceil(contamination * static_cast<double>(scores.size())));
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted[std::min(flagged, sorted.size()) - 1];
}

}  // namespace qv
