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

#include "cgnet/statevec.hpp"

#include <cmath>
#include <stdexcept>

namespace cgnet {

namespace {

std::uint64_t bit_of(int n_qubits, int q) { return std::uint64_t(1) << (n_qubits - 1 - q); }

void check_qubit(const StateVector& s, int q) {
  if (q < 0 || q >= s.n_qubits) throw std::out_of_range("qubit index out of range");
}

}  // namespace

StateVector::StateVector(int n) : n_qubits(n) {
  if (n <= 0 || n > 30) throw std::invalid_argument("unsupported qubit count");
  amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  amplitudes(0) = 1.0;
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amplitudes(0) = 0.0;
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amps) {
  const auto len = static_cast<std::uint64_t>(amps.size());
  if (len < 2 || (len & (len - 1)) != 0) throw std::invalid_argument("length is not a power of two");
  if (std::abs(amps.squaredNorm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
  StateVector s;
  s.n_qubits = 0;
  while ((std::uint64_t(1) << s.n_qubits) < len) ++s.n_qubits;
  s.amplitudes = std::move(amps);
  return s;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out;
  out.n_qubits = a.n_qubits + b.n_qubits;
  out.amplitudes.resize(a.amplitudes.size() * b.amplitudes.size());
  for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i) {
    out.amplitudes.segment(i * b.amplitudes.size(), b.amplitudes.size()) = a.amplitudes(i) * b.amplitudes;
  }
  return out;
}

void apply_inplace(StateVector& state, const GateOp& op) {
  if (op.kind == GateKind::Measure) throw std::invalid_argument("measurement needs a sampling path");
  for (int q : op.targets) check_qubit(state, q);
  std::uint64_t cmask = 0, cvalue = 0;
  for (const auto& c : op.controls) {
    check_qubit(state, c.qubit);
    cmask |= bit_of(state.n_qubits, c.qubit);
    if (c.polarity == 1) cvalue |= bit_of(state.n_qubits, c.qubit);
  }
  const Unitary m = gate_matrix(op);
  const int k = static_cast<int>(op.targets.size());
  if (m.rows() != (Eigen::Index(1) << k)) throw std::invalid_argument("matrix does not match targets");

  std::uint64_t tmask = 0;
  std::vector<std::uint64_t> offs(std::size_t(1) << k, 0);
  for (int t = 0; t < k; ++t) {
    const auto b = bit_of(state.n_qubits, op.targets[t]);
    tmask |= b;
    // Matrix index bit (k-1-t) corresponds to target t.
    for (std::size_t j = 0; j < offs.size(); ++j) {
      if (j & (std::size_t(1) << (k - 1 - t))) offs[j] |= b;
    }
  }

  auto& amp = state.amplitudes;
  const std::uint64_t dim = state.dim();
  if (k == 1) {
    const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const auto s = offs[1];
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & tmask) || (i & cmask) != cvalue) continue;
      const cplx a0 = amp(i), a1 = amp(i | s);
      amp(i) = m00 * a0 + m01 * a1;
      amp(i | s) = m10 * a0 + m11 * a1;
    }
    return;
  }
  Eigen::VectorXcd buf(offs.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tmask) || (i & cmask) != cvalue) continue;
    for (std::size_t j = 0; j < offs.size(); ++j) buf(j) = amp(i | offs[j]);
    const Eigen::VectorXcd out = m * buf;
    for (std::size_t j = 0; j < offs.size(); ++j) amp(i | offs[j]) = out(j);
  }
}

StateVector apply_gate(StateVector state, const GateOp& op) {
  apply_inplace(state, op);
  return state;
}

void apply_circuit(StateVector& state, const Circuit& c) {
  if (c.n_qubits() > state.n_qubits) throw std::invalid_argument("circuit is wider than the state");
  for (const auto& op : c.ops()) apply_inplace(state, op);
}

double probability_of(const StateVector& state, int qubit, int outcome) {
  check_qubit(state, qubit);
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const auto b = bit_of(state.n_qubits, qubit);
  double p = 0.0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (((i & b) != 0) == (outcome == 1)) p += std::norm(state.amplitudes(i));
  }
  return p;
}

double collapse_inplace(StateVector& state, int qubit, int outcome) {
  const double p = probability_of(state, qubit, outcome);
  if (p < kZeroProbability) return p;
  const auto b = bit_of(state.n_qubits, qubit);
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (((i & b) != 0) == (outcome == 1)) state.amplitudes(i) *= scale;
    else state.amplitudes(i) = 0.0;
  }
  return p;
}

Projection project_qubit(const StateVector& state, int qubit, int outcome) {
  Projection r;
  r.collapsed = state;
  r.probability = collapse_inplace(r.collapsed, qubit, outcome);
  r.valid = r.probability >= kZeroProbability;
  return r;
}

int measure_inplace(StateVector& state, int qubit, double u) {
  const double p0 = probability_of(state, qubit, 0);
  const int outcome = u < p0 ? 0 : 1;
  collapse_inplace(state, qubit, outcome);
  return outcome;
}

Sample sample_measurement(const StateVector& state, int qubit, std::mt19937_64& rng) {
  Sample s;
  s.collapsed = state;
  s.outcome = measure_inplace(s.collapsed, qubit, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  return s;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits) throw std::invalid_argument("dimension mismatch");
  return a.amplitudes.dot(b.amplitudes);  // Eigen's dot conjugates the left operand
}

Unitary circuit_to_unitary(const Circuit& c) {
  if (c.n_qubits() > kMaxUnitaryQubits) throw std::invalid_argument("too many qubits for a dense unitary");
  if (c.has_measurement()) throw std::invalid_argument("circuit contains measurements");
  const std::uint64_t dim = std::uint64_t(1) << c.n_qubits();
  Unitary u(dim, dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    StateVector s = StateVector::basis(c.n_qubits(), j);
    apply_circuit(s, c);
    u.col(static_cast<Eigen::Index>(j)) = s.amplitudes;
  }
  return u;
}

}  // namespace cgnet
