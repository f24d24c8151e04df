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
#include <span>
#include <stdexcept>
#include <vector>

#include "qvar/amplitude_estimation.hpp"
#include "qvar/circuit.hpp"
#include "qvar/simulator.hpp"

namespace qv {

/// Register layout of a variance oracle built around an n-qubit index
/// register: `index` holds the encoded values, `branch` is the ancilla whose
/// Hadamard pair creates the data/mean branches, `mean_flag` (e) and
/// `collision` (q) are the n-qubit bookkeeping registers whose final
/// configuration marks the deviation terms.
struct QvarLayout {
  QubitRange index;      // i
  QubitRange branch;     // a (single qubit)
  QubitRange mean_flag;  // e
  QubitRange collision;  // q
  int n = 0;
};

/// The variance oracle: after running `circuit`, the amplitude on
/// |1>_a |1..1>_e |0..0>_q |t>_i equals (d_t - mean(d)) / (2N) for encoded
/// values d_t = sqrt(N) * alpha_t, so the probability of `good` is
/// Var(d) / (4N).
struct QvarOracle {
  Circuit circuit;
  QvarLayout layout;
  GoodState good;
};

/// Population variance with 1/N normalization, two-pass.
inline double classical_variance(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("classical_variance: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mean) * (v - mean);
  return sum_sq / static_cast<double>(values.size());
}

inline double classical_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("classical_mean: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  return mean / static_cast<double>(values.size());
}

/// Wraps the variance oracle around an arbitrary index-register preparation.
/// `prep` may use extra ancilla qubits of its own (e.g. the difference
/// circuit's branch flag); constraints on those ancillas are passed through
/// `extra_good`. The branch/mean_flag/collision registers are appended after
/// the preparation's qubits.
inline QvarOracle build_qvar_oracle_around(const Circuit& prep, std::span<const int> index_qubits,
                                           const GoodState& extra_good = {}) {
  const int n = static_cast<int>(index_qubits.size());
  if (n == 0) throw std::invalid_argument("qvar oracle: empty index register");
  for (int q : index_qubits) {
    if (q < 0 || q >= prep.num_qubits) {
      throw std::invalid_argument("qvar oracle: index qubit outside preparation circuit");
    }
  }
  for (const BitConstraint& c : extra_good.constraints) {
    if (c.qubit < 0 || c.qubit >= prep.num_qubits) {
      throw std::invalid_argument("qvar oracle: extra good constraint outside preparation");
    }
  }

  const int branch = prep.num_qubits;
  const int mean_flag0 = branch + 1;
  const int collision0 = mean_flag0 + n;
  QvarOracle oracle;
  oracle.layout.branch = {branch, 1};
  oracle.layout.mean_flag = {mean_flag0, n};
  oracle.layout.collision = {collision0, n};
  oracle.layout.index = {index_qubits[0], n};  // informative only when contiguous
  oracle.layout.n = n;

  Circuit c(collision0 + n);
  c.registers = prep.registers;
  c.add_register("a", {branch, 1});
  c.add_register("e", {mean_flag0, n});
  c.add_register("q", {collision0, n});
  c.append(prep);
  c.add(Gate::h(branch));
  for (int k = 0; k < n; ++k) {
    // e_k ends up 1 on the data branch (a = 0) and 0 on the mean branch.
    c.add(Gate::cnot(branch, mean_flag0 + k));
    c.add(Gate::x(mean_flag0 + k));
  }
  for (int k = 0; k < n; ++k) {
    c.add(Gate::cswap(branch, index_qubits[static_cast<std::size_t>(k)], collision0 + k));
  }
  for (int k = 0; k < n; ++k) {
    c.add(Gate::controlled_h(branch, index_qubits[static_cast<std::size_t>(k)]));
  }
  for (int k = 0; k < n; ++k) {
    c.add(Gate::controlled_h(branch, mean_flag0 + k));
  }
  c.add(Gate::h(branch));
  for (int k = 0; k < n; ++k) {
    c.add(Gate::h(collision0 + k));
  }
  oracle.circuit = std::move(c);

  oracle.good.constraints.push_back({branch, true});
  for (int k = 0; k < n; ++k) oracle.good.constraints.push_back({mean_flag0 + k, true});
  for (int k = 0; k < n; ++k) oracle.good.constraints.push_back({collision0 + k, false});
  for (const BitConstraint& c2 : extra_good.constraints) oracle.good.constraints.push_back(c2);
  return oracle;
}

/// Variance oracle over classical values already brought to unit norm; the
/// index register occupies qubits [0, n) and the whole oracle spans 3n+1.
inline QvarOracle build_qvar_oracle(const Gate& state_prep) {
  if (state_prep.kind != GateKind::StatePrep) {
    throw std::invalid_argument("build_qvar_oracle: expected a StatePrep gate");
  }
  const int n = static_cast<int>(state_prep.targets.size());
  Circuit prep(n);
  prep.add_register("i", {0, n});
  prep.add(state_prep);
  std::vector<int> index_qubits;
  for (int k = 0; k < n; ++k) index_qubits.push_back(state_prep.targets[static_cast<std::size_t>(k)]);
  return build_qvar_oracle_around(prep, index_qubits);
}

/// Raw good-state probability estimate of the variance oracle wrapped around
/// an arbitrary preparation. No classical rescaling is applied: the caller
/// owns the scale (the outlier pipeline does its own calibration).
inline AmplitudeEstimate qvar_raw_amplitude(const Circuit& prep, std::span<const int> index_qubits,
                                            const GoodState& extra_good,
                                            const EstimatorConfig& config) {
  const QvarOracle oracle = build_qvar_oracle_around(prep, index_qubits, extra_good);
  return estimate_amplitude(oracle.circuit, oracle.good, config);
}

struct VarianceEstimate {
  double variance = 0.0;
  double a_hat = 0.0;
  double rescale = 1.0;  // variance = rescale * a_hat
  EstimationMethod method = EstimationMethod::Exact;
  int s = 0;
  std::uint64_t shots = 0;
  std::uint64_t oracle_calls = 0;
  std::size_t padded_from = 0;  // input length before power-of-two padding
};

/// Estimates the population variance of classical values through the oracle.
///
/// The input is padded to a power of two with copies of its mean (padding
/// with the mean leaves both the mean and the deviations untouched), then
/// amplitude-encoded as v/||v||. The oracle's good-state probability is
/// Var(v_pad) / (4 ||v_pad||^2), so the variance of the original values is
/// recovered as 4 ||v_pad||^2 * (N_pad / N_orig) * a_hat.
inline VarianceEstimate estimate_variance(std::span<const double> values,
                                          const EstimatorConfig& config) {
  if (values.size() < 2) throw std::invalid_argument("estimate_variance: need at least 2 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("estimate_variance: non-finite value");
  }
  const std::size_t n_orig = values.size();
  std::size_t n_pad = 1;
  while (n_pad < n_orig) n_pad <<= 1;

  const double mean = classical_mean(values);
  std::vector<double> padded(values.begin(), values.end());
  padded.resize(n_pad, mean);
  double norm_sq = 0.0;
  for (double v : padded) norm_sq += v * v;

  VarianceEstimate out;
  out.method = config.method;
  out.s = config.method == EstimationMethod::Canonical ? config.s : 0;
  out.shots = config.shots;
  out.padded_from = n_orig;
  if (norm_sq == 0.0) {
    // All-zero data: the variance is analytically 0 and there is no state to
    // prepare; skip the quantum path.
    out.rescale = 1.0;
    return out;
  }
  out.rescale = 4.0 * norm_sq * static_cast<double>(n_pad) / static_cast<double>(n_orig);

  const QvarOracle oracle = build_qvar_oracle(amplitude_encode(padded));
  const AmplitudeEstimate est = estimate_amplitude(oracle.circuit, oracle.good, config);
  out.a_hat = est.a_hat;
  out.oracle_calls = est.oracle_calls;
  out.variance = out.rescale * out.a_hat;
  return out;
}

}  // namespace qv
