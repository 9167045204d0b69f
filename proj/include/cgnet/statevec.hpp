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

// Dense statevector simulation. Qubit 0 is the most significant bit of the
// basis index, so |q0 q1 ... q_{n-1}> has index sum_q q * 2^(n-1-q).

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "cgnet/circuit.hpp"

namespace cgnet {

inline constexpr double kZeroProbability = 1e-14;
inline constexpr int kMaxUnitaryQubits = 12;

struct StateVector {
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;
  explicit StateVector(int n);  // |0...0>

  static StateVector basis(int n, std::uint64_t index);
  // Throws unless the length is a power of two and the norm is 1 within 1e-10.
  static StateVector from_amplitudes(Eigen::VectorXcd amps);

  std::uint64_t dim() const { return static_cast<std::uint64_t>(amplitudes.size()); }
  double norm_squared() const { return amplitudes.squaredNorm(); }
};

// Tensor product with `a` on the leading (more significant) qubits.
StateVector tensor(const StateVector& a, const StateVector& b);

void apply_inplace(StateVector& state, const GateOp& op);
StateVector apply_gate(StateVector state, const GateOp& op);
// Unitary part only; throws on measurement ops.
void apply_circuit(StateVector& state, const Circuit& c);

double probability_of(const StateVector& state, int qubit, int outcome);

struct Projection {
  double probability = 0.0;
  StateVector collapsed;
  bool valid = false;  // false when probability < kZeroProbability
};

Projection project_qubit(const StateVector& state, int qubit, int outcome);
// Collapses in place and returns the branch probability. A branch below
// kZeroProbability leaves the state untouched and returns the probability.
double collapse_inplace(StateVector& state, int qubit, int outcome);

struct Sample {
  int outcome = 0;
  StateVector collapsed;
};

Sample sample_measurement(const StateVector& state, int qubit, std::mt19937_64& rng);
// Outcome 0 iff u < P(0); collapses in place. `u` should be uniform in [0, 1).
int measure_inplace(StateVector& state, int qubit, double u);

cplx inner_product(const StateVector& a, const StateVector& b);

Unitary circuit_to_unitary(const Circuit& c);

}  // namespace cgnet
