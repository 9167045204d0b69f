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

#include "cgnet/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace cgnet {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr std::array<KindInfo, 15> kKinds = {{
    {GateKind::H, "H", 1, 0},
    {GateKind::X, "X", 1, 0},
    {GateKind::Y, "Y", 1, 0},
    {GateKind::Z, "Z", 1, 0},
    {GateKind::Rx, "Rx", 1, 1},
    {GateKind::Ry, "Ry", 1, 1},
    {GateKind::Rz, "Rz", 1, 1},
    {GateKind::U1, "U1", 1, 1},
    {GateKind::U2, "U2", 1, 2},
    {GateKind::U3, "U3", 1, 3},
    {GateKind::Phase, "P", 1, 1},
    {GateKind::CNOT, "CNOT", 2, 0},
    {GateKind::RZZ, "RZZ", 2, 1},
    {GateKind::CustomUnitary, "U", 0, 0},
    {GateKind::Measure, "M", 1, 0},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw std::logic_error("unknown gate kind");
}

GateOp make(GateKind kind, std::vector<int> targets, std::vector<double> params = {}) {
  GateOp op;
  op.kind = kind;
  op.targets = std::move(targets);
  op.params = std::move(params);
  return op;
}

}  // namespace

std::string_view kind_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  if (name == "Phase") return GateKind::Phase;
  if (name == "CX") return GateKind::CNOT;
  return std::nullopt;
}

int kind_arity(GateKind kind) { return info(kind).arity; }
int kind_param_count(GateKind kind) { return info(kind).params; }

bool GateOp::operator==(const GateOp& other) const {
  if (kind != other.kind || targets != other.targets || params != other.params ||
      controls != other.controls) {
    return false;
  }
  if (matrix.rows() != other.matrix.rows() || matrix.cols() != other.matrix.cols()) return false;
  return matrix == other.matrix;
}

Unitary gate_matrix(const GateOp& op) {
  const auto& p = op.params;
  switch (op.kind) {
    case GateKind::H: return mat::hadamard();
    case GateKind::X: return mat::pauli_x();
    case GateKind::Y: return mat::pauli_y();
    case GateKind::Z: return mat::pauli_z();
    case GateKind::Rx: return mat::rx(p.at(0));
    case GateKind::Ry: return mat::ry(p.at(0));
    case GateKind::Rz: return mat::rz(p.at(0));
    case GateKind::U1:
    case GateKind::Phase: return mat::u1(p.at(0));
    case GateKind::U2: return mat::u2(p.at(0), p.at(1));
    case GateKind::U3: return mat::u3(p.at(0), p.at(1), p.at(2));
    case GateKind::CNOT: return mat::cnot();
    case GateKind::RZZ: return mat::rzz(p.at(0));
    case GateKind::CustomUnitary: return op.matrix;
    case GateKind::Measure: break;
  }
  throw std::invalid_argument("measurement has no unitary matrix");
}

void validate(const GateOp& op) {
  const auto& ki = info(op.kind);
  if (op.kind == GateKind::CustomUnitary) {
    if (op.targets.empty()) throw std::invalid_argument("custom unitary needs targets");
    const Eigen::Index dim = Eigen::Index(1) << op.targets.size();
    if (op.matrix.rows() != dim || op.matrix.cols() != dim) {
      throw std::invalid_argument("custom unitary dimension does not match its targets");
    }
    const Unitary check = op.matrix * op.matrix.adjoint() - Unitary::Identity(dim, dim);
    if (check.cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("custom matrix is not unitary");
    }
  } else {
    if (static_cast<int>(op.targets.size()) != ki.arity) {
      throw std::invalid_argument("wrong number of targets for " + std::string(ki.name));
    }
    if (static_cast<int>(op.params.size()) != ki.params) {
      throw std::invalid_argument("wrong number of parameters for " + std::string(ki.name));
    }
  }
  for (double v : op.params) {
    if (!std::isfinite(v)) throw std::invalid_argument("gate parameter is not finite");
  }
  for (std::size_t i = 0; i < op.targets.size(); ++i) {
    if (op.targets[i] < 0) throw std::invalid_argument("negative qubit index");
    for (std::size_t j = i + 1; j < op.targets.size(); ++j) {
      if (op.targets[i] == op.targets[j]) throw std::invalid_argument("repeated target qubit");
    }
  }
  for (const auto& c : op.controls) {
    if (c.qubit < 0) throw std::invalid_argument("negative control index");
    if (c.polarity != 0 && c.polarity != 1) throw std::invalid_argument("control polarity must be 0 or 1");
    if (std::find(op.targets.begin(), op.targets.end(), c.qubit) != op.targets.end()) {
      throw std::invalid_argument("control overlaps a target");
    }
  }
  if (op.kind == GateKind::Measure && !op.controls.empty()) {
    throw std::invalid_argument("measurement cannot be controlled");
  }
}

namespace gate {
GateOp h(int q) { return make(GateKind::H, {q}); }
GateOp x(int q) { return make(GateKind::X, {q}); }
GateOp y(int q) { return make(GateKind::Y, {q}); }
GateOp z(int q) { return make(GateKind::Z, {q}); }
GateOp rx(int q, double theta) { return make(GateKind::Rx, {q}, {theta}); }
GateOp ry(int q, double theta) { return make(GateKind::Ry, {q}, {theta}); }
GateOp rz(int q, double theta) { return make(GateKind::Rz, {q}, {theta}); }
GateOp u1(int q, double lambda) { return make(GateKind::U1, {q}, {lambda}); }
GateOp u2(int q, double phi, double lambda) { return make(GateKind::U2, {q}, {phi, lambda}); }
GateOp u3(int q, double theta, double phi, double lambda) {
  return make(GateKind::U3, {q}, {theta, phi, lambda});
}
GateOp phase(int q, double phi) { return make(GateKind::Phase, {q}, {phi}); }
GateOp cnot(int control, int target) { return make(GateKind::CNOT, {control, target}); }
GateOp rzz(int a, int b, double theta) { return make(GateKind::RZZ, {a, b}, {theta}); }
GateOp custom(std::vector<int> targets, Unitary m) {
  GateOp op = make(GateKind::CustomUnitary, std::move(targets));
  op.matrix = std::move(m);
  validate(op);
  return op;
}
GateOp measure(int q) { return make(GateKind::Measure, {q}); }
GateOp pauli(char letter, int q) {
  switch (letter) {
    case 'X': return x(q);
    case 'Y': return y(q);
    case 'Z': return z(q);
    default: throw std::invalid_argument(std::string("not a Pauli letter: ") + letter);
  }
}
}  // namespace gate

GateOp with_control(GateOp op, Control c) {
  op.controls.push_back(c);
  validate(op);
  return op;
}

GateOp inverse(const GateOp& op) {
  GateOp inv = op;
  auto& p = inv.params;
  switch (op.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CNOT: break;
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::U1:
    case GateKind::Phase:
    case GateKind::RZZ: p[0] = -p[0]; break;
    case GateKind::U3: p = {-op.params[0], -op.params[2], -op.params[1]}; break;
    case GateKind::U2:
      inv.kind = GateKind::U3;
      p = {-std::numbers::pi / 2, -op.params[1], -op.params[0]};
      break;
    case GateKind::CustomUnitary: inv.matrix = op.matrix.adjoint(); break;
    case GateKind::Measure: throw std::invalid_argument("measurement has no inverse");
  }
  return inv;
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("circuit needs at least one qubit");
}

bool Circuit::has_measurement() const {
  return std::any_of(ops_.begin(), ops_.end(),
                     [](const GateOp& op) { return op.kind == GateKind::Measure; });
}

Circuit& Circuit::add(GateOp op) {
  validate(op);
  for (int q : op.targets) {
    if (q >= n_qubits_) throw std::out_of_range("target qubit out of range");
  }
  for (const auto& c : op.controls) {
    if (c.qubit >= n_qubits_) throw std::out_of_range("control qubit out of range");
  }
  ops_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) throw std::invalid_argument("appended circuit is wider");
  for (const auto& op : other.ops_) add(op);
  return *this;
}

Circuit& Circuit::append_mapped(const Circuit& other, const std::vector<int>& qubit_map) {
  if (static_cast<int>(qubit_map.size()) < other.n_qubits_) {
    throw std::invalid_argument("qubit map is shorter than the circuit");
  }
  for (GateOp op : other.ops_) {
    for (int& q : op.targets) q = qubit_map[q];
    for (auto& c : op.controls) c.qubit = qubit_map[c.qubit];
    add(std::move(op));
  }
  return *this;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) out.add(inverse(*it));
  return out;
}

Circuit controlled(const Circuit& c, Control ctrl) {
  Circuit out(c.n_qubits());
  for (const auto& op : c.ops()) out.add(with_control(op, ctrl));
  return out;
}

Circuit remap(const Circuit& c, const std::vector<int>& qubit_map, int n_qubits) {
  Circuit out(n_qubits);
  out.append_mapped(c, qubit_map);
  return out;
}

Circuit realize_network(const GateNetwork& net, NetworkMode mode) {
  const auto touches_ancilla = [&](const GateOp& op) {
    if (std::find(op.targets.begin(), op.targets.end(), net.ancilla) != op.targets.end()) return true;
    return std::any_of(op.controls.begin(), op.controls.end(),
                       [&](const Control& c) { return c.qubit == net.ancilla; });
  };
  if (net.ancilla < 0 || net.ancilla >= net.base.n_qubits()) {
    throw std::invalid_argument("ancilla outside the register");
  }
  for (const auto& op : net.base.ops()) {
    if (touches_ancilla(op)) throw std::invalid_argument("ancilla collides with a system qubit");
  }
  for (const auto& [pos, op] : net.transforms) {
    if (touches_ancilla(op)) throw std::invalid_argument("transformation gate acts on the ancilla");
    if (pos > net.base.size()) throw std::out_of_range("transformation insertion index");
  }

  Circuit out(net.base.n_qubits());
  const auto insert_at = [&](std::size_t i) {
    if (mode == NetworkMode::off) return;
    for (const auto& [pos, op] : net.transforms) {
      if (pos != i) continue;
      out.add(mode == NetworkMode::controlled ? with_control(op, {net.ancilla, 1}) : op);
    }
  };
  for (std::size_t i = 0; i < net.base.size(); ++i) {
    insert_at(i);
    out.add(net.base.ops()[i]);
  }
  insert_at(net.base.size());
  return out;
}

PhaseEquivalence compare_up_to_phase(const Unitary& u, const Unitary& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("dimension mismatch");
  }
  PhaseEquivalence r;
  Eigen::Index i = 0, j = 0;
  v.cwiseAbs().maxCoeff(&i, &j);
  cplx ratio(1.0, 0.0);
  if (std::abs(v(i, j)) > 0) {
    ratio = u(i, j) / v(i, j);
    if (std::abs(ratio) > 0) ratio /= std::abs(ratio);
    else ratio = 1.0;
  }
  r.phase = std::arg(ratio);
  r.max_deviation = (u - ratio * v).cwiseAbs().maxCoeff();
  r.equivalent = true;
  return r;
}

bool unitary_equiv_up_to_phase(const Unitary& u, const Unitary& v, double tol) {
  return compare_up_to_phase(u, v).max_deviation < tol;
}

CircuitParseError::CircuitParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "qubits " << c.n_qubits() << "\n";
  for (const auto& op : c.ops()) {
    os << kind_name(op.kind);
    for (int q : op.targets) os << ' ' << q;
    if (!op.controls.empty()) {
      os << " c=";
      for (std::size_t i = 0; i < op.controls.size(); ++i) {
        os << (i ? "," : "") << op.controls[i].qubit << ':' << op.controls[i].polarity;
      }
    }
    if (!op.params.empty()) {
      os << " p=";
      for (std::size_t i = 0; i < op.params.size(); ++i) os << (i ? "," : "") << op.params[i];
    }
    if (op.kind == GateKind::CustomUnitary) {
      os << " m=";
      for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
        for (Eigen::Index k = 0; k < op.matrix.cols(); ++k) {
          os << (r || k ? "," : "") << op.matrix(r, k).real() << ',' << op.matrix(r, k).imag();
        }
      }
    }
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(sep, start);
    const auto stop = end == std::string_view::npos ? s.size() : end;
    out.emplace_back(s.substr(start, stop - start));
    start = stop + 1;
  }
  return out;
}

double parse_double(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw CircuitParseError(line, "bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s, int line) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) throw CircuitParseError(line, "bad integer '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<Circuit> circuit;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!circuit) {
      if (tok.size() != 2 || tok[0] != "qubits") throw CircuitParseError(line_no, "expected 'qubits <n>'");
      const int n = parse_int(tok[1], line_no);
      if (n <= 0) throw CircuitParseError(line_no, "qubit count must be positive");
      circuit.emplace(n);
      continue;
    }

    const auto kind = kind_from_name(tok[0]);
    if (!kind) throw CircuitParseError(line_no, "unknown gate '" + tok[0] + "'");
    GateOp op;
    op.kind = *kind;
    std::vector<double> m;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const auto& t = tok[i];
      if (t.rfind("c=", 0) == 0) {
        for (const auto& item : split(t.substr(2), ',')) {
          const auto parts = split(item, ':');
          if (parts.size() != 2) throw CircuitParseError(line_no, "bad control '" + item + "'");
          op.controls.push_back({parse_int(parts[0], line_no), parse_int(parts[1], line_no)});
        }
      } else if (t.rfind("p=", 0) == 0) {
        for (const auto& item : split(t.substr(2), ',')) op.params.push_back(parse_double(item, line_no));
      } else if (t.rfind("m=", 0) == 0) {
        for (const auto& item : split(t.substr(2), ',')) m.push_back(parse_double(item, line_no));
      } else {
        op.targets.push_back(parse_int(t, line_no));
      }
    }
    if (op.kind == GateKind::CustomUnitary) {
      const std::size_t dim = std::size_t(1) << op.targets.size();
      if (m.size() != 2 * dim * dim) throw CircuitParseError(line_no, "custom matrix has wrong size");
      op.matrix.resize(dim, dim);
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t k = 0; k < dim; ++k) {
          const std::size_t at = 2 * (r * dim + k);
          op.matrix(r, k) = cplx(m[at], m[at + 1]);
        }
      }
    }
    try {
      circuit->add(std::move(op));
    } catch (const std::exception& e) {
      throw CircuitParseError(line_no, e.what());
    }
  }
  if (!circuit) throw CircuitParseError(line_no, "missing 'qubits <n>' header");
  return *circuit;
}

}  // namespace cgnet
