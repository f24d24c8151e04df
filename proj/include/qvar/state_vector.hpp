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
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "qvar/rng.hpp"

namespace qv {

/// One required bit of a basis-state configuration (qubit 0 is the least
/// significant bit of the basis index).
struct BitConstraint {
  int qubit = 0;
  bool value = false;
};

/// A contiguous block of qubit indices [first, first + count).
struct QubitRange {
  int first = 0;
  int count = 0;
};

struct StateVector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  static StateVector zero(int num_qubits) {
    if (num_qubits < 0 || num_qubits > 30) {
      throw std::invalid_argument("StateVector: qubit count out of range");
    }
    StateVector s;
    s.num_qubits = num_qubits;
    s.amplitudes.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    s.amplitudes[0] = {1.0, 0.0};
    return s;
  }

  std::size_t dim() const { return amplitudes.size(); }

  double norm_sq() const {
    double total = 0.0;
    for (const auto& a : amplitudes) total += std::norm(a);
    return total;
  }
};

namespace detail {

/// (mask, pattern) pair so that an index i satisfies a constraint list iff
/// (i & mask) == pattern.
struct MaskPattern {
  std::uint64_t mask = 0;
  std::uint64_t pattern = 0;
};

inline MaskPattern mask_pattern(std::span<const BitConstraint> constraints, int num_qubits) {
  MaskPattern mp;
  for (const BitConstraint& c : constraints) {
    if (c.qubit < 0 || c.qubit >= num_qubits) {
      throw std::invalid_argument("constraint qubit out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    mp.mask |= bit;
    if (c.value) mp.pattern |= bit;
  }
  return mp;
}

}  // namespace detail

/// Exact probability of observing the constrained bits: the sum of |amp|^2
/// over all basis states satisfying every constraint.
inline double marginal_probability(const StateVector& state,
                                   std::span<const BitConstraint> constraints) {
  const auto mp = detail::mask_pattern(constraints, state.num_qubits);
  double total = 0.0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if ((i & mp.mask) == mp.pattern) total += std::norm(state.amplitudes[i]);
  }
  return total;
}

/// Amplitude of a single basis state given by constraints over *all* qubits.
inline std::complex<double> basis_amplitude(const StateVector& state,
                                            std::span<const BitConstraint> constraints) {
  const auto mp = detail::mask_pattern(constraints, state.num_qubits);
  if (mp.mask != state.dim() - 1) {
    throw std::invalid_argument("basis_amplitude: constraints must cover all qubits");
  }
  return state.amplitudes[mp.pattern];
}

/// Multinomial sample of `shots` measurements of a register, drawn from the
/// exact marginal distribution. Deterministic for a fixed seed.
inline std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                            QubitRange reg,
                                                            std::uint64_t shots,
                                                            std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_counts: shots must be >= 1");
  if (reg.count <= 0 || reg.first < 0 || reg.first + reg.count > state.num_qubits) {
    throw std::invalid_argument("sample_counts: register out of range");
  }
  const std::uint64_t outcomes = std::uint64_t{1} << reg.count;
  const std::uint64_t value_mask = outcomes - 1;
  std::vector<double> prob(outcomes, 0.0);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    prob[(i >> reg.first) & value_mask] += std::norm(state.amplitudes[i]);
  }
  std::vector<double> cdf(outcomes);
  double acc = 0.0;
  for (std::uint64_t v = 0; v < outcomes; ++v) {
    acc += prob[v];
    cdf[v] = acc;
  }
  cdf[outcomes - 1] = 1.0;  // guard against rounding at the top end

  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto v = static_cast<std::uint64_t>(it - cdf.begin());
    ++counts[v < outcomes ? v : outcomes - 1];
  }
  return counts;
}

}  // namespace qv
