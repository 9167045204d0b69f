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

#include "cgnet/transpile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cgnet {

namespace {

constexpr double kPi = std::numbers::pi;

class Emitter {
 public:
  explicit Emitter(Circuit& out) : out_(out) {}

  void u1(int q, double l) { out_.add(gate::u1(q, l)); }
  void u2(int q, double p, double l) { out_.add(gate::u2(q, p, l)); }
  void u3(int q, double t, double p, double l) { out_.add(gate::u3(q, t, p, l)); }
  void cx(int c, int t) { out_.add(gate::cnot(c, t)); }

  // Uncontrolled single-qubit op as one IBM gate.
  void single(const GateOp& op) {
    const int q = op.targets[0];
    const auto& p = op.params;
    switch (op.kind) {
      case GateKind::H: u2(q, 0, kPi); break;
      case GateKind::X: u3(q, kPi, 0, kPi); break;
      case GateKind::Y: u3(q, kPi, kPi / 2, kPi / 2); break;
      case GateKind::Z: u1(q, kPi); break;
      case GateKind::Rx: u3(q, p[0], -kPi / 2, kPi / 2); break;
      case GateKind::Ry: u3(q, p[0], 0, 0); break;
      case GateKind::Rz:
      case GateKind::U1:
      case GateKind::Phase: u1(q, p[0]); break;
      case GateKind::U2: u2(q, p[0], p[1]); break;
      case GateKind::U3: u3(q, p[0], p[1], p[2]); break;
      case GateKind::CustomUnitary: {
        const ZYZ a = zyz_decompose(op.matrix);
        u3(q, a.gamma, a.beta, a.delta);
        break;
      }
      default: throw std::logic_error("not a single-qubit gate");
    }
  }

  // Exact controlled-U (relative phase included) with two CNOTs.
  void controlled_abc(int c, int t, const Mat2& u) {
    const ZYZ a = zyz_decompose(u);
    u1(t, (a.delta - a.beta) / 2);
    cx(c, t);
    u3(t, -a.gamma / 2, 0, -(a.delta + a.beta) / 2);
    cx(c, t);
    u3(t, a.gamma / 2, a.beta, 0);
    if (std::abs(std::remainder(a.alpha, 2 * kPi)) > 1e-12) u1(c, a.alpha);
  }

  void controlled_rz(int c, int t, double theta) {
    u1(t, theta / 2);
    cx(c, t);
    u1(t, -theta / 2);
    cx(c, t);
  }

  void toffoli(int c1, int c2, int t) {
    u2(t, 0, kPi);
    cx(c2, t);
    u1(t, -kPi / 4);
    cx(c1, t);
    u1(t, kPi / 4);
    cx(c2, t);
    u1(t, -kPi / 4);
    cx(c1, t);
    u1(c2, kPi / 4);
    u2(t, 0, -3 * kPi / 4);  // T followed by H
    cx(c1, c2);
    u1(c1, kPi / 4);
    u1(c2, -kPi / 4);
    cx(c1, c2);
  }

  void controlled(const GateOp& op, Strategy strategy) {
    const int c = op.controls[0].qubit;
    const bool open = op.controls[0].polarity == 0;
    if (open) u3(c, kPi, 0, kPi);
    const auto& p = op.params;
    const bool tpl = strategy == Strategy::templates;
    if (op.kind == GateKind::CNOT) {
      toffoli(c, op.targets[0], op.targets[1]);
    } else if (op.kind == GateKind::RZZ) {
      const int a = op.targets[0], b = op.targets[1];
      cx(a, b);
      if (tpl) controlled_rz(c, b, p[0]);
      else controlled_abc(c, b, mat::rz(p[0]));
      cx(a, b);
    } else if (op.kind == GateKind::CustomUnitary && op.targets.size() != 1) {
      throw std::invalid_argument("controlled multi-qubit custom unitaries are not supported");
    } else if (op.kind == GateKind::Measure) {
      throw std::invalid_argument("controlled measurement");
    } else {
      const int t = op.targets[0];
      switch (tpl ? op.kind : GateKind::CustomUnitary) {
        case GateKind::X: cx(c, t); break;
        case GateKind::Y:
          u1(t, -kPi / 2);
          cx(c, t);
          u1(t, kPi / 2);
          break;
        case GateKind::Z:
          u2(t, 0, kPi);
          cx(c, t);
          u2(t, 0, kPi);
          break;
        case GateKind::Rz: controlled_rz(c, t, p[0]); break;
        case GateKind::Ry:
          u3(t, p[0] / 2, 0, 0);
          cx(c, t);
          u3(t, -p[0] / 2, 0, 0);
          cx(c, t);
          break;
        case GateKind::Rx:
          u1(t, kPi / 2);
          cx(c, t);
          u3(t, -p[0] / 2, 0, 0);
          cx(c, t);
          u3(t, p[0] / 2, -kPi / 2, 0);
          break;
        case GateKind::U1:
        case GateKind::Phase:
          u1(c, p[0] / 2);
          cx(c, t);
          u1(t, -p[0] / 2);
          cx(c, t);
          u1(t, p[0] / 2);
          break;
        default: {
          GateOp bare = op;
          bare.controls.clear();
          controlled_abc(c, t, gate_matrix(bare));
        }
      }
    }
    if (open) u3(c, kPi, 0, kPi);
  }

 private:
  Circuit& out_;
};

Circuit to_ibm(const Circuit& c, Strategy strategy) {
  Circuit out(c.n_qubits());
  Emitter e(out);
  for (const auto& op : c.ops()) {
    if (op.controls.size() > 1) throw std::invalid_argument("more than one control is not supported");
    if (op.kind == GateKind::Measure) {
      out.add(op);
    } else if (!op.controls.empty()) {
      e.controlled(op, strategy);
    } else if (op.kind == GateKind::CNOT) {
      out.add(op);
    } else if (op.kind == GateKind::RZZ) {
      e.cx(op.targets[0], op.targets[1]);
      e.u1(op.targets[1], op.params[0]);
      e.cx(op.targets[0], op.targets[1]);
    } else if (op.kind == GateKind::CustomUnitary && op.targets.size() != 1) {
      throw std::invalid_argument("multi-qubit custom unitaries cannot be transpiled");
    } else {
      e.single(op);
    }
  }
  return out;
}

bool is_rzz_native(const GateOp& op) {
  return op.kind == GateKind::RZZ && op.controls.empty() && std::abs(op.params[0] - kPi / 2) < 1e-12;
}

bool is_qtm_native(const GateOp& op) {
  if (!op.controls.empty()) return false;
  switch (op.kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::Measure: return true;
    case GateKind::RZZ: return is_rzz_native(op);
    default: return false;
  }
}

void ibm_to_qtm(const GateOp& op, Circuit& out) {
  const auto& p = op.params;
  switch (op.kind) {
    case GateKind::CNOT: {
      const int c = op.targets[0], t = op.targets[1];
      out.add(gate::ry(t, -kPi / 2));
      out.add(gate::rzz(c, t, kPi / 2));
      out.add(gate::rz(c, -kPi / 2));
      out.add(gate::rz(t, -kPi / 2));
      out.add(gate::ry(t, kPi / 2));
      break;
    }
    case GateKind::U1: out.add(gate::rz(op.targets[0], p[0])); break;
    case GateKind::U2:
      out.add(gate::rz(op.targets[0], p[1]));
      out.add(gate::ry(op.targets[0], kPi / 2));
      out.add(gate::rz(op.targets[0], p[0]));
      break;
    case GateKind::U3:
      out.add(gate::rz(op.targets[0], p[2]));
      out.add(gate::ry(op.targets[0], p[0]));
      out.add(gate::rz(op.targets[0], p[1]));
      break;
    case GateKind::Measure: out.add(op); break;
    default: throw std::logic_error("unexpected gate after IBM lowering");
  }
}

}  // namespace

std::string_view basis_name(NativeBasis b) {
  return b == NativeBasis::ibm_cnot_u ? "ibm" : "qtm";
}

std::optional<NativeBasis> basis_from_name(std::string_view name) {
  if (name == "ibm" || name == "IBM_CNOT_U") return NativeBasis::ibm_cnot_u;
  if (name == "qtm" || name == "QTM_RZZ") return NativeBasis::qtm_rzz;
  return std::nullopt;
}

ZYZ zyz_decompose(const Mat2& u) {
  ZYZ r;
  r.alpha = std::arg(u.determinant()) / 2;
  const Mat2 v = std::polar(1.0, -r.alpha) * u;
  const cplx a = v(0, 0), b = v(1, 0);
  r.gamma = 2 * std::atan2(std::abs(b), std::abs(a));
  const double sum = std::abs(a) > 1e-14 ? -2 * std::arg(a) : 0.0;   // beta + delta
  const double diff = std::abs(b) > 1e-14 ? 2 * std::arg(b) : 0.0;   // beta - delta
  r.beta = (sum + diff) / 2;
  r.delta = (sum - diff) / 2;
  return r;
}

Circuit transpile(const Circuit& c, NativeBasis basis, Strategy strategy) {
  if (basis == NativeBasis::ibm_cnot_u) return to_ibm(c, strategy);
  Circuit out(c.n_qubits());
  for (const auto& op : c.ops()) {
    if (is_qtm_native(op)) {
      out.add(op);
      continue;
    }
    Circuit one(c.n_qubits());
    one.add(op);
    const Circuit ibm = to_ibm(one, strategy);
    for (const auto& lowered : ibm.ops()) ibm_to_qtm(lowered, out);
  }
  return out;
}

GateCount count_gates(const Circuit& c) {
  GateCount n;
  for (const auto& op : c.ops()) {
    if (op.kind == GateKind::Measure) continue;
    if (!op.controls.empty()) throw std::invalid_argument("controlled gate is not native");
    switch (op.kind) {
      case GateKind::CNOT: ++n.two_qubit; break;
      case GateKind::RZZ:
        if (!is_rzz_native(op)) throw std::invalid_argument("RZZ angle other than pi/2 is not native");
        ++n.two_qubit;
        break;
      case GateKind::U1:
      case GateKind::U2:
      case GateKind::U3:
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz: ++n.one_qubit; break;
      default:
        throw std::invalid_argument("non-native gate " + std::string(kind_name(op.kind)));
    }
  }
  return n;
}

long predict_chain_counts(int n_qubits, double sigma, double dt, ChainMethod method) {
  if (n_qubits <= 0 || n_qubits % 2 != 0) throw std::invalid_argument("chain length must be even");
  if (!(sigma > 0) || !(dt > 0)) throw std::invalid_argument("sigma and dt must be positive");
  const long steps = static_cast<long>(std::ceil(sigma / dt - 1e-9));
  const long n = n_qubits;
  return method == ChainMethod::naive_controlled ? 20 * n * steps + 10 * n : n * steps + 2 * n;
}

double error_budget_per_gate(int n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("chain length must be positive");
  return 1.0 / (64.0 * n_qubits);
}

}  // namespace cgnet
