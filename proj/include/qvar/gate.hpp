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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qv {

/// Elementary gate kinds of the simulator. Controlled variants (CNOT, CSWAP,
/// controlled-H, multi-controlled phases) are expressed by attaching controls
/// to these kinds rather than as separate kinds.
enum class GateKind {
  H,          // Hadamard on one target
  X,          // bit flip on one target
  Swap,       // exchange of two targets
  Phase,      // multiply e^{i*angle} on basis states satisfying the controls
  StatePrep,  // orthogonal unitary mapping |0...0> to a prescribed real vector
};

/// A control condition: the gate acts only on basis states where `qubit`
/// holds `value`.
struct Control {
  int qubit = 0;
  bool value = true;
};

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::vector<Control> controls;
  std::vector<double> payload;  // StatePrep only: unit-norm real amplitudes
  double angle = 0.0;           // Phase only

  static Gate h(int target) { return {GateKind::H, {target}, {}, {}, 0.0}; }
  static Gate x(int target) { return {GateKind::X, {target}, {}, {}, 0.0}; }
  static Gate cnot(int control, int target) {
    return {GateKind::X, {target}, {{control, true}}, {}, 0.0};
  }
  static Gate swap(int a, int b) { return {GateKind::Swap, {a, b}, {}, {}, 0.0}; }
  static Gate cswap(int control, int a, int b) {
    return {GateKind::Swap, {a, b}, {{control, true}}, {}, 0.0};
  }
  static Gate controlled_h(int control, int target) {
    return {GateKind::H, {target}, {{control, true}}, {}, 0.0};
  }
  static Gate z(int target) {
    return {GateKind::Phase, {}, {{target, true}}, {}, 3.141592653589793238462643383279502884};
  }
  /// Phase e^{i*angle} applied where all controls match. With no controls this
  /// is a global phase (used by the Grover operator's overall sign).
  static Gate phase(double angle, std::vector<Control> controls) {
    return {GateKind::Phase, {}, std::move(controls), {}, angle};
  }
  /// Sign flip (-1) on every basis state satisfying the controls.
  static Gate phase_flip(std::vector<Control> controls) {
    return phase(3.141592653589793238462643383279502884, std::move(controls));
  }
  /// StatePrep over `targets` (targets[j] carries bit j of the payload index).
  /// The payload must already have unit 2-norm; see amplitude_encode() for the
  /// normalizing constructor.
  static Gate state_prep(std::vector<int> targets, std::vector<double> payload) {
    Gate g{GateKind::StatePrep, std::move(targets), {}, std::move(payload), 0.0};
    if (g.payload.size() != (std::size_t{1} << g.targets.size())) {
      throw std::invalid_argument("state_prep: payload length must be 2^targets");
    }
    double norm_sq = 0.0;
    for (double v : g.payload) norm_sq += v * v;
    if (std::abs(norm_sq - 1.0) > 1e-12) {
      throw std::invalid_argument("state_prep: payload must have unit 2-norm");
    }
    return g;
  }

  /// The inverse gate. Every kind here is an involution except Phase, whose
  /// inverse negates the angle (the StatePrep unitary is a Householder
  /// reflection, hence self-inverse).
  Gate inverse() const {
    Gate g = *this;
    if (kind == GateKind::Phase) g.angle = -g.angle;
    return g;
  }

  /// Exact phase factor; +/-pi and +/-pi/2 are mapped to exact values so that
  /// real circuits stay exactly real.
  std::complex<double> phase_factor() const {
    constexpr double kPi = 3.141592653589793238462643383279502884;
    if (angle == kPi || angle == -kPi) return {-1.0, 0.0};
    if (angle == kPi / 2) return {0.0, 1.0};
    if (angle == -kPi / 2) return {0.0, -1.0};
    return {std::cos(angle), std::sin(angle)};
  }

  void validate(int num_qubits) const;
};

/// StatePrep gate that maps |0...0> to sum_t (values[t]/||values||) |t> over
/// `targets` (or qubits [0, log2(len)) when targets are omitted).
inline Gate amplitude_encode(std::span<const double> values, std::vector<int> targets = {}) {
  if (values.empty() || (values.size() & (values.size() - 1)) != 0) {
    throw std::invalid_argument("amplitude_encode: length must be a power of two");
  }
  double norm_sq = 0.0;
  for (double v : values) norm_sq += v * v;
  if (norm_sq == 0.0) {
    throw std::invalid_argument("amplitude_encode: zero vector cannot be encoded");
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  std::vector<double> unit(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) unit[i] = values[i] * inv;
  if (targets.empty()) {
    int n = 0;
    while ((std::size_t{1} << n) < values.size()) ++n;
    targets.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) targets[static_cast<std::size_t>(j)] = j;
  }
  return Gate::state_prep(std::move(targets), std::move(unit));
}

inline void Gate::validate(int num_qubits) const {
  auto in_range = [num_qubits](int q) { return q >= 0 && q < num_qubits; };
  std::uint64_t seen = 0;
  for (int t : targets) {
    if (!in_range(t)) throw std::invalid_argument("gate target qubit out of range");
    const std::uint64_t bit = std::uint64_t{1} << t;
    if (seen & bit) throw std::invalid_argument("gate targets must be distinct");
    seen |= bit;
  }
  for (const Control& c : controls) {
    if (!in_range(c.qubit)) throw std::invalid_argument("gate control qubit out of range");
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (seen & bit) throw std::invalid_argument("gate controls must not overlap targets");
    seen |= bit;
  }
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
      if (targets.size() != 1) throw std::invalid_argument("H/X take one target");
      break;
    case GateKind::Swap:
      if (targets.size() != 2) throw std::invalid_argument("Swap takes two targets");
      break;
    case GateKind::Phase:
      if (!targets.empty()) throw std::invalid_argument("Phase takes no targets");
      break;
    case GateKind::StatePrep: {
      if (targets.empty()) throw std::invalid_argument("StatePrep needs targets");
      if (payload.size() != (std::size_t{1} << targets.size())) {
        throw std::invalid_argument("StatePrep payload length mismatch");
      }
      double norm_sq = 0.0;
      for (double v : payload) norm_sq += v * v;
      if (std::abs(norm_sq - 1.0) > 1e-12) {
        throw std::invalid_argument("StatePrep payload must have unit 2-norm");
      }
      break;
    }
  }
}

}  // namespace qv
