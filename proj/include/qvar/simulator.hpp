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
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qvar/circuit.hpp"
#include "qvar/gate.hpp"
#include "qvar/state_vector.hpp"

namespace qv {

namespace detail {

inline MaskPattern control_mask(const Gate& gate) {
  MaskPattern mp;
  for (const Control& c : gate.controls) {
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    mp.mask |= bit;
    if (c.value) mp.pattern |= bit;
  }
  return mp;
}

inline void apply_single_qubit(std::vector<std::complex<double>>& amps, int target,
                               const MaskPattern& ctrl, bool hadamard) {
  const std::uint64_t step = std::uint64_t{1} << target;
  const std::uint64_t dim = amps.size();
  constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
  for (std::uint64_t base = 0; base < dim; base += 2 * step) {
    for (std::uint64_t i0 = base; i0 < base + step; ++i0) {
      if ((i0 & ctrl.mask) != ctrl.pattern) continue;
      const std::uint64_t i1 = i0 + step;
      const std::complex<double> a0 = amps[i0];
      const std::complex<double> a1 = amps[i1];
      if (hadamard) {
        amps[i0] = (a0 + a1) * kInvSqrt2;
        amps[i1] = (a0 - a1) * kInvSqrt2;
      } else {  // X
        amps[i0] = a1;
        amps[i1] = a0;
      }
    }
  }
}

inline void apply_swap(std::vector<std::complex<double>>& amps, int t0, int t1,
                       const MaskPattern& ctrl) {
  const std::uint64_t b0 = std::uint64_t{1} << t0;
  const std::uint64_t b1 = std::uint64_t{1} << t1;
  const std::uint64_t flip = b0 | b1;
  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    // Representative of each swapped pair: bit t0 set, bit t1 clear.
    if ((i & b0) == 0 || (i & b1) != 0) continue;
    if ((i & ctrl.mask) != ctrl.pattern) continue;
    std::swap(amps[i], amps[i ^ flip]);
  }
}

inline void apply_phase(std::vector<std::complex<double>>& amps, const Gate& gate,
                        const MaskPattern& ctrl) {
  const std::complex<double> factor = gate.phase_factor();
  const std::uint64_t dim = amps.size();
  if (factor == std::complex<double>{-1.0, 0.0}) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & ctrl.mask) == ctrl.pattern) amps[i] = -amps[i];
    }
  } else {
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & ctrl.mask) == ctrl.pattern) amps[i] *= factor;
    }
  }
}

/// StatePrep as a Householder reflection: U = I - 2uu^T with u chosen so that
/// U|0...0> equals the payload. U is real orthogonal and an involution, which
/// makes the gate self-inverse and keeps real circuits exactly real.
inline void apply_state_prep(std::vector<std::complex<double>>& amps, const Gate& gate,
                             const MaskPattern& ctrl) {
  const std::size_t sub_dim = gate.payload.size();
  std::vector<double> u(sub_dim);
  double tail_sq = 0.0;
  for (std::size_t t = 1; t < sub_dim; ++t) {
    u[t] = -gate.payload[t];
    tail_sq += u[t] * u[t];
  }
  // 1 - v0 computed as tail^2/(1 + v0) when v0 > 0; the payload is unit-norm,
  // so this avoids the cancellation that loses the reflection direction for
  // payloads near |0...0>.
  const double head = gate.payload[0];
  u[0] = head > 0.0 ? tail_sq / (1.0 + head) : 1.0 - head;
  const double w_norm_sq = u[0] * u[0] + tail_sq;
  if (w_norm_sq == 0.0) return;  // payload is |0...0>; the unitary is the identity
  const double inv_norm = 1.0 / std::sqrt(w_norm_sq);
  for (double& v : u) v *= inv_norm;

  // scatter[t]: payload index t spread over the target qubit positions.
  std::vector<std::uint64_t> scatter(sub_dim, 0);
  std::uint64_t target_mask = 0;
  for (std::size_t j = 0; j < gate.targets.size(); ++j) {
    target_mask |= std::uint64_t{1} << gate.targets[j];
  }
  for (std::size_t t = 1; t < sub_dim; ++t) {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < gate.targets.size(); ++j) {
      if (t & (std::size_t{1} << j)) bits |= std::uint64_t{1} << gate.targets[j];
    }
    scatter[t] = bits;
  }

  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & target_mask) continue;  // group representative: all target bits zero
    if ((i & ctrl.mask) != ctrl.pattern) continue;
    std::complex<double> dot{0.0, 0.0};
    for (std::size_t t = 0; t < sub_dim; ++t) dot += u[t] * amps[i | scatter[t]];
    dot *= 2.0;
    for (std::size_t t = 0; t < sub_dim; ++t) amps[i | scatter[t]] -= dot * u[t];
  }
}

}  // namespace detail

inline void apply_gate_in_place(StateVector& state, const Gate& gate) {
  gate.validate(state.num_qubits);
  const auto ctrl = detail::control_mask(gate);
  switch (gate.kind) {
    case GateKind::H:
      detail::apply_single_qubit(state.amplitudes, gate.targets[0], ctrl, true);
      break;
    case GateKind::X:
      detail::apply_single_qubit(state.amplitudes, gate.targets[0], ctrl, false);
      break;
    case GateKind::Swap:
      detail::apply_swap(state.amplitudes, gate.targets[0], gate.targets[1], ctrl);
      break;
    case GateKind::Phase:
      detail::apply_phase(state.amplitudes, gate, ctrl);
      break;
    case GateKind::StatePrep:
      detail::apply_state_prep(state.amplitudes, gate, ctrl);
      break;
  }
}

inline StateVector apply_gate(StateVector state, const Gate& gate) {
  apply_gate_in_place(state, gate);
  return state;
}

/// Runs the circuit on an initial state (pass by value; move in to avoid the
/// copy for large states).
inline StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  if (initial.num_qubits != circuit.num_qubits) {
    throw std::invalid_argument("run_circuit: state/circuit qubit count mismatch");
  }
  for (const Gate& g : circuit.gates) apply_gate_in_place(initial, g);
  return initial;
}

inline StateVector run_circuit(const Circuit& circuit) {
  return run_circuit(circuit, StateVector::zero(circuit.num_qubits));
}

}  // namespace qv
