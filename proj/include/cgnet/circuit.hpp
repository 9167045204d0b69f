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

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgnet/gates.hpp"

namespace cgnet {

using Unitary = Eigen::MatrixXcd;

enum class GateKind {
  H,
  X,
  Y,
  Z,
  Rx,
  Ry,
  Rz,
  U1,
  U2,
  U3,
  Phase,
  CNOT,
  RZZ,
  CustomUnitary,
  Measure,
};

std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

// Number of target qubits and angle parameters a kind takes. CustomUnitary
// reports 0 targets: its arity comes from its matrix.
int kind_arity(GateKind kind);
int kind_param_count(GateKind kind);

struct Control {
  int qubit = 0;
  int polarity = 1;  // 1: acts when the control reads |1>, 0: open control

  bool operator==(const Control&) const = default;
};

// CNOT stores {control, target} in `targets`; extra ancilla controls go in
// `controls`, so a controlled CNOT is a Toffoli.
struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::vector<double> params;
  std::vector<Control> controls;
  Unitary matrix;  // CustomUnitary only

  bool is_two_qubit() const { return targets.size() == 2; }
  bool operator==(const GateOp& other) const;
};

// Matrix over the op's targets, ignoring `controls`.
Unitary gate_matrix(const GateOp& op);

// Throws std::invalid_argument if arity, parameter count, control/target
// overlap, or unitarity (custom matrices, tol 1e-10) is violated.
void validate(const GateOp& op);

namespace gate {
GateOp h(int q);
GateOp x(int q);
GateOp y(int q);
GateOp z(int q);
GateOp rx(int q, double theta);
GateOp ry(int q, double theta);
GateOp rz(int q, double theta);
GateOp u1(int q, double lambda);
GateOp u2(int q, double phi, double lambda);
GateOp u3(int q, double theta, double phi, double lambda);
GateOp phase(int q, double phi);
GateOp cnot(int control, int target);
GateOp rzz(int a, int b, double theta);
GateOp custom(std::vector<int> targets, Unitary m);
GateOp measure(int q);
GateOp pauli(char letter, int q);  // 'X', 'Y' or 'Z'
}  // namespace gate

GateOp with_control(GateOp op, Control c);
GateOp inverse(const GateOp& op);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  bool has_measurement() const;

  Circuit& add(GateOp op);
  Circuit& append(const Circuit& other);
  // Appends `other` with its qubit q mapped to qubit_map[q].
  Circuit& append_mapped(const Circuit& other, const std::vector<int>& qubit_map);

  bool operator==(const Circuit&) const = default;

 private:
  int n_qubits_ = 0;
  std::vector<GateOp> ops_;
};

Circuit inverse(const Circuit& c);
// Every op gains control `c`; the register must already contain c.qubit.
Circuit controlled(const Circuit& c, Control ctrl);
// Re-indexes qubits into a register of `n_qubits` (qubit q -> qubit_map[q]).
Circuit remap(const Circuit& c, const std::vector<int>& qubit_map, int n_qubits);

struct GateNetwork {
  Circuit base;
  // (insertion index into base.ops(), transformation gate). Index i places
  // the gate before base op i; index base.size() appends at the end.
  std::vector<std::pair<std::size_t, GateOp>> transforms;
  int ancilla = 0;
};

enum class NetworkMode { off, on, controlled };

Circuit realize_network(const GateNetwork& net, NetworkMode mode);

struct PhaseEquivalence {
  bool equivalent = false;
  double max_deviation = 0.0;
  double phase = 0.0;  // arg of e^{i phi} with U ~ e^{i phi} V
};

PhaseEquivalence compare_up_to_phase(const Unitary& u, const Unitary& v);
bool unitary_equiv_up_to_phase(const Unitary& u, const Unitary& v, double tol = 1e-8);

// Line format, one op per line:
//   qubits <n>
//   <Kind> <targets...> [c=<q>:<pol>,...] [p=<angle>,...] [m=<re>,<im>,...]
// Blank lines and text after '#' are ignored.
std::string to_text(const Circuit& c);
Circuit parse_circuit(std::string_view text);

struct CircuitParseError : std::runtime_error {
  CircuitParseError(int line, const std::string& what);
  int line;
};

}  // namespace cgnet
