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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvar/gate.hpp"
#include "qvar/state_vector.hpp"

namespace qv {

/// An ordered gate list over a fixed number of qubits, with optional named
/// register ranges documenting the wiring.
struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::map<std::string, QubitRange> registers;

  Circuit() = default;
  explicit Circuit(int nq) : num_qubits(nq) {
    if (nq < 0) throw std::invalid_argument("Circuit: negative qubit count");
  }

  Circuit& add(Gate g) {
    g.validate(num_qubits);
    gates.push_back(std::move(g));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.num_qubits > num_qubits) {
      throw std::invalid_argument("Circuit::append: appended circuit is wider");
    }
    for (const Gate& g : other.gates) add(g);
    return *this;
  }

  /// Declares a named register. Ranges must stay inside the circuit and must
  /// not overlap previously declared registers.
  Circuit& add_register(const std::string& name, QubitRange range) {
    if (range.count <= 0 || range.first < 0 || range.first + range.count > num_qubits) {
      throw std::invalid_argument("register range out of bounds: " + name);
    }
    for (const auto& [other_name, other] : registers) {
      const bool disjoint =
          range.first + range.count <= other.first || other.first + other.count <= range.first;
      if (!disjoint) {
        throw std::invalid_argument("register " + name + " overlaps " + other_name);
      }
    }
    registers.emplace(name, range);
    return *this;
  }

  const QubitRange& reg(const std::string& name) const {
    const auto it = registers.find(name);
    if (it == registers.end()) throw std::invalid_argument("unknown register: " + name);
    return it->second;
  }
};

/// The circuit with every gate given one extra positive control. The control
/// qubit must not be touched by the circuit's own gates.
inline Circuit controlled(const Circuit& circuit, int control) {
  if (control < 0) throw std::invalid_argument("controlled: negative control qubit");
  Circuit out(std::max(circuit.num_qubits, control + 1));
  out.registers = circuit.registers;
  for (const Gate& g : circuit.gates) {
    for (int t : g.targets) {
      if (t == control) throw std::invalid_argument("controlled: control collides with target");
    }
    for (const Control& c : g.controls) {
      if (c.qubit == control) {
        throw std::invalid_argument("controlled: control collides with existing control");
      }
    }
    Gate gc = g;
    gc.controls.push_back({control, true});
    out.add(std::move(gc));
  }
  return out;
}

/// The inverse circuit: reversed gate order, each gate inverted.
inline Circuit adjoint(const Circuit& circuit) {
  Circuit out(circuit.num_qubits);
  out.registers = circuit.registers;
  out.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    out.add(it->inverse());
  }
  return out;
}

/// Q^power as a gate list (power >= 0; power 0 is the empty circuit).
inline Circuit repeated(const Circuit& circuit, int power) {
  if (power < 0) throw std::invalid_argument("repeated: negative power");
  Circuit out(circuit.num_qubits);
  out.registers = circuit.registers;
  for (int k = 0; k < power; ++k) out.append(circuit);
  return out;
}

}  // namespace qv
