// Copyright 2026 The cgnet Authors
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

#include <optional>
#include <string_view>

#include "cgnet/circuit.hpp"

namespace cgnet {

// ibm_cnot_u: CNOT, U1, U2, U3.
// qtm_rzz:    RZZ(pi/2), Rx, Ry, Rz.
enum class NativeBasis { ibm_cnot_u, qtm_rzz };

// templates: per-kind recipes for controlled rotations, phases, Paulis and
//            the 6-CNOT Toffoli.
// generic:   every controlled single-qubit gate goes through the ZYZ/ABC
//            construction; counts are bounded, not minimal.
enum class Strategy { templates, generic };

std::string_view basis_name(NativeBasis b);
std::optional<NativeBasis> basis_from_name(std::string_view name);

struct GateCount {
  int two_qubit = 0;
  int one_qubit = 0;

  bool operator==(const GateCount&) const = default;
};

// Supports at most one control per op. Output is equal to the input up to a
// global phase; measurements pass through unchanged.
Circuit transpile(const Circuit& c, NativeBasis basis, Strategy strategy = Strategy::templates);

// Accepts the union of both native vocabularies; throws std::invalid_argument
// on anything else. Measurements are not counted.
GateCount count_gates(const Circuit& c);

// Z-Y-Z Euler angles: u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZYZ {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};
ZYZ zyz_decompose(const Mat2& u);

enum class ChainMethod { naive_controlled, reversal };

// Two-qubit gate count per rodeo cycle for the periodic N-qubit chain:
//   naive_controlled: 20 N s + 10 N,   reversal: N s + 2 N,
// with s = ceil(sigma / dt). Throws for odd N or non-positive sigma, dt.
long predict_chain_counts(int n_qubits, double sigma, double dt, ChainMethod method);

// Two-qubit error rate below which the peak survives a reversal cycle: 1/(64 N).
double error_budget_per_gate(int n_qubits);

}  // namespace cgnet
