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
#include <sstream>
#include <string>
#include <vector>

#include "qvar/amplitude_estimation.hpp"
#include "qvar/metrics.hpp"
#include "qvar/outlier_detection.hpp"
#include "qvar/rng.hpp"
#include "qvar/synthetic.hpp"
#include "qvar/variance.hpp"

namespace qv {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::vector<double> random_values(Rng& rng, std::size_t count) {
  std::vector<double> v(count);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline void check_identity_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  double max_amp_err = 0.0;
  double max_prob_err = 0.0;
  Rng rng(derive_stream(seed, 101));
  for (std::size_t n_values : {2u, 4u, 8u, 16u}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> values = random_values(rng, n_values);
      const QvarOracle oracle = build_qvar_oracle(amplitude_encode(values));
      const StateVector state = run_circuit(oracle.circuit);

      double norm_sq = 0.0;
      for (double v : values) norm_sq += v * v;
      const double scale = std::sqrt(static_cast<double>(n_values) / norm_sq);
      std::vector<double> encoded(values);
      for (double& v : encoded) v *= scale;
      const double mean = classical_mean(encoded);

      for (std::size_t t = 0; t < n_values; ++t) {
        std::vector<BitConstraint> cons;
        for (int k = 0; k < oracle.layout.n; ++k) {
          cons.push_back({oracle.layout.index.first + k, ((t >> k) & 1) != 0});
        }
        cons.push_back({oracle.layout.branch.first, true});
        for (int k = 0; k < oracle.layout.n; ++k) {
          cons.push_back({oracle.layout.mean_flag.first + k, true});
        }
        for (int k = 0; k < oracle.layout.n; ++k) {
          cons.push_back({oracle.layout.collision.first + k, false});
        }
        const auto amp = basis_amplitude(state, cons);
        const double expected = (encoded[t] - mean) / (2.0 * static_cast<double>(n_values));
        max_amp_err = std::max(max_amp_err,
                               std::abs(amp.real() - expected) + std::abs(amp.imag()));
      }
      const double prob = good_state_probability(state, oracle.good);
      const double expected_prob =
          classical_variance(encoded) / (4.0 * static_cast<double>(n_values));
      max_prob_err = std::max(max_prob_err, std::abs(prob - expected_prob));
    }
  }
  out.push_back({"identity", "deviation amplitudes match (d_t - mean)/(2N)", max_amp_err <= 1e-10,
                 "max error " + fmt(max_amp_err)});
  out.push_back({"identity", "good-state probability equals Var/(4N)", max_prob_err <= 1e-10,
                 "max error " + fmt(max_prob_err)});
}

inline void check_variance_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  Rng rng(derive_stream(seed, 202));
  double max_err = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t len = 2 + rng.below(15);  // includes non-power-of-two lengths
    const std::vector<double> values = random_values(rng, len);
    EstimatorConfig cfg;  // exact
    const VarianceEstimate est = estimate_variance(values, cfg);
    max_err = std::max(max_err, std::abs(est.variance - classical_variance(values)));
  }
  out.push_back({"variance", "exact readout equals the classical variance", max_err <= 1e-9,
                 "max error " + fmt(max_err)});
}

inline Circuit random_small_prep(Rng& rng, int n) {
  std::vector<double> amps(std::size_t{1} << n);
  for (double& a : amps) a = rng.uniform(-1.0, 1.0);
  Circuit c(n);
  c.add(amplitude_encode(amps));
  return c;
}

inline void check_ae_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  Rng rng(derive_stream(seed, 303));
  const GoodState good{{{0, true}}};

  int hits = 0;
  const int trials = 100;
  const double bound = kPi / 64.0 + kPi * kPi / 4096.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Circuit prep = random_small_prep(rng, 2);
    const double a = exact_amplitude(prep, good).a_hat;
    const AmplitudeEstimate est = canonical_ae(prep, good, 6, 1, rng.next_u64());
    if (std::abs(est.a_hat - a) <= bound) ++hits;
  }
  out.push_back({"ae", "single-shot estimates satisfy the s=6 error bound in >= 81 of 100 trials",
                 hits >= 81, std::to_string(hits) + "/100 within bound"});

  std::vector<double> medians;
  for (int s = 3; s <= 6; ++s) {
    std::vector<double> errors;
    Rng oracle_rng(derive_stream(seed, 304));
    for (int trial = 0; trial < 20; ++trial) {
      const Circuit prep = random_small_prep(oracle_rng, 2);
      const double a = exact_amplitude(prep, good).a_hat;
      const AmplitudeEstimate est = canonical_ae(prep, good, s, 0, 0);
      errors.push_back(std::abs(est.a_hat - a));
    }
    std::sort(errors.begin(), errors.end());
    medians.push_back(0.5 * (errors[9] + errors[10]));
  }
  bool monotone = true;
  for (std::size_t k = 1; k < medians.size(); ++k) {
    if (medians[k] > medians[k - 1] + 1e-15) monotone = false;
  }
  out.push_back({"ae", "median exact-readout error is non-increasing for s = 3..6", monotone,
                 fmt(medians[0]) + " -> " + fmt(medians[3])});
}

inline void check_mlae_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  const GoodState good{{{0, true}}};
  Rng oracle_rng(derive_stream(seed, 404));
  std::vector<double> canonical_errors;
  std::vector<double> mlae_errors;
  std::uint64_t canonical_calls = 0;
  std::uint64_t mlae_calls = 0;
  const std::vector<int> schedule = default_mlae_schedule();
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit prep = random_small_prep(oracle_rng, 2);
    const double a = exact_amplitude(prep, good).a_hat;
    const AmplitudeEstimate ce = canonical_ae(prep, good, 6, 0, 0);
    const AmplitudeEstimate me = mlae(prep, good, schedule, 0, 0);
    canonical_errors.push_back(std::abs(ce.a_hat - a));
    mlae_errors.push_back(std::abs(me.a_hat - a));
    canonical_calls = ce.oracle_calls;
    mlae_calls = me.oracle_calls;
  }
  std::sort(canonical_errors.begin(), canonical_errors.end());
  std::sort(mlae_errors.begin(), mlae_errors.end());
  const double canonical_median = 0.5 * (canonical_errors[9] + canonical_errors[10]);
  const double mlae_median = 0.5 * (mlae_errors[9] + mlae_errors[10]);
  out.push_back({"mlae",
                 "maximum-likelihood estimation beats canonical readout at matched budget",
                 mlae_median <= canonical_median && mlae_calls <= canonical_calls,
                 "median " + fmt(mlae_median) + " vs " + fmt(canonical_median) + " (" +
                     std::to_string(mlae_calls) + " vs " + std::to_string(canonical_calls) +
                     " oracle calls)"});
}

inline void check_bound_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  double min_gap = std::numeric_limits<double>::infinity();
  double mae = 0.0;
  std::size_t pivots = 0;
  for (std::size_t dims : {std::size_t{20}, std::size_t{30}}) {
    SynthOdSpec spec;
    spec.records = 60;
    spec.dims = dims;
    spec.contamination = 0.05;
    spec.seed = derive_stream(seed, 500 + dims);
    const OdData od = gen_od(spec);
    for (std::size_t pivot = 0; pivot < od.data.num_records; ++pivot) {
      const BoundCheck bc = check_bound(translate_and_project(od.data, pivot));
      min_gap = std::min(min_gap, bc.gap);
      mae += bc.gap;
      ++pivots;
    }
  }
  mae /= static_cast<double>(pivots);
  out.push_back({"bound", "difference variance stays below the angle bound (gap >= 0)",
                 min_gap >= 0.0, "min gap " + fmt(min_gap) + " over " + std::to_string(pivots) +
                                     " pivots"});
  out.push_back({"bound", "bound gap MAE stays in the expected magnitude band", mae <= 1e-3,
                 "MAE " + fmt(mae)});
}

inline void check_qoda_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  Rng rng(derive_stream(seed, 606));
  double max_err = 0.0;
  for (std::size_t records : {std::size_t{3}, std::size_t{4}}) {
    Dataset data;
    data.num_records = records;
    data.num_features = 1;
    data.values = random_values(rng, records);
    for (std::size_t pivot = 0; pivot < records; ++pivot) {
      const ProjectedDataset p = translate_and_project(data, pivot);
      const DifferenceStatePrep prep = build_difference_stateprep(p);
      double total = 0.0;
      std::vector<double> flat(prep.padded_records * prep.padded_dim, 0.0);
      for (std::size_t r = 0; r < p.num_records; ++r) {
        for (std::size_t k = 0; k < p.dim; ++k) flat[r * prep.padded_dim + k] = p.at(r, k);
      }
      for (std::size_t j = 0; j < prep.padded_records; ++j) {
        for (std::size_t i = 0; i < prep.padded_records; ++i) {
          for (std::size_t k = 0; k < prep.padded_dim; ++k) {
            const double diff = flat[j * prep.padded_dim + k] - flat[i * prep.padded_dim + k];
            total += diff * diff;
          }
        }
      }
      const double brute = total / (static_cast<double>(prep.padded_records) *
                                    static_cast<double>(prep.padded_records) *
                                    static_cast<double>(prep.padded_dim));
      EstimatorConfig cfg;  // exact
      max_err = std::max(max_err, std::abs(quantum_outlier_factor(p, cfg) - brute));
    }
  }
  out.push_back({"qoda", "exact outlier factor equals the mean of squared differences",
                 max_err <= 1e-9, "max error " + fmt(max_err)});
}

inline void check_metrics_group(std::vector<CheckResult>& out, std::uint64_t seed) {
  Rng rng(derive_stream(seed, 707));
  bool ok = true;
  std::string detail = "all identities hold";
  for (int trial = 0; trial < 25 && ok; ++trial) {
    const std::size_t len = 3 + rng.below(8);
    Ranking r1(len);
    Ranking r2(len);
    std::iota(r1.begin(), r1.end(), std::size_t{0});
    std::iota(r2.begin(), r2.end(), std::size_t{0});
    for (std::size_t i = len - 1; i > 0; --i) std::swap(r2[i], r2[rng.below(i + 1)]);
    const double p = rng.uniform(0.2, 0.95);
    const double v12 = rbo(r1, r2, p);
    const double v21 = rbo(r2, r1, p);
    if (std::abs(v12 - v21) > 1e-12 || v12 < 0.0 || v12 > 1.0 + 1e-12) {
      ok = false;
      detail = "rbo symmetry/range violated";
    }
    if (std::abs(rbo(r1, r1, p) - 1.0) > 1e-12) {
      ok = false;
      detail = "rbo of identical rankings is not 1";
    }
    if (std::abs(precision_at_n(r1, r2, len) - 1.0) > 1e-12) {
      ok = false;
      detail = "precision at full depth is not 1 for permutations";
    }
    std::vector<double> a = random_values(rng, len);
    std::vector<double> b = random_values(rng, len);
    const ErrorStats es = error_stats(a, b);
    if (es.mae > es.rmse + 1e-12) {
      ok = false;
      detail = "mae exceeded rmse";
    }
  }
  out.push_back({"metrics", "ranking and error metric identities", ok, detail});
}

}  // namespace detail

/// Runs the invariant suite (optionally one named group) and returns one
/// entry per check. Groups: identity, variance, ae, mlae, bound, qoda,
/// metrics.
inline std::vector<CheckResult> run_verification(std::uint64_t seed,
                                                 const std::string& group = "") {
  std::vector<CheckResult> out;
  const auto want = [&group](const char* name) { return group.empty() || group == name; };
  if (want("identity")) detail::check_identity_group(out, seed);
  if (want("variance")) detail::check_variance_group(out, seed);
  if (want("ae")) detail::check_ae_group(out, seed);
  if (want("mlae")) detail::check_mlae_group(out, seed);
  if (want("bound")) detail::check_bound_group(out, seed);
  if (want("qoda")) detail::check_qoda_group(out, seed);
  if (want("metrics")) detail::check_metrics_group(out, seed);
  if (out.empty()) throw std::invalid_argument("unknown verification group: " + group);
  return out;
}

}  // namespace qv
