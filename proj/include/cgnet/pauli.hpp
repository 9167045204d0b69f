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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cgnet/circuit.hpp"
#include "cgnet/statevec.hpp"

namespace cgnet {

// Letter i acts on qubit i. 'I' marks identity.
struct PauliString {
  std::string letters;

  PauliString() = default;
  explicit PauliString(std::string s);

  int n_qubits() const { return static_cast<int>(letters.size()); }
  int weight() const;
  bool operator==(const PauliString&) const = default;
  auto operator<=>(const PauliString&) const = default;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;
  explicit PauliHamiltonian(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  // Merges with an existing identical string.
  PauliHamiltonian& add(double coeff, const PauliString& s);
  PauliHamiltonian& add(double coeff, std::string_view letters) { return add(coeff, PauliString(std::string(letters))); }

  // Coefficient of `s`, 0 when absent.
  double coeff_of(const PauliString& s) const;
  // Sum of |coeff|, a bound on the spectral radius.
  double coefficient_norm() const;

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

struct HamiltonianParseError : std::runtime_error {
  HamiltonianParseError(int line, const std::string& what);
  int line;
};

// One term per line: "<coeff> <letters>", e.g. "2.5 XZ". '#' starts a comment.
PauliHamiltonian parse_hamiltonian(std::string_view text);
std::string to_text(const PauliHamiltonian& h);

// c1 X0 Z1 + c2 Z0 X1.
PauliHamiltonian object_hamiltonian(double c1, double c2);
// a X0 X1 + b Y0 Y1 + c Z0 Z1.
PauliHamiltonian heisenberg(double a, double b, double c);
// Periodic chain: sum_n c1 X_n Z_{n+1} + c2 Z_n X_{n+1}, indices mod N.
PauliHamiltonian chain_hamiltonian(int n_qubits, double c1, double c2);

Eigen::MatrixXcd pauli_matrix(const PauliString& s);
Eigen::MatrixXcd to_matrix(const PauliHamiltonian& h);

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;    // ascending, with multiplicity
  Eigen::MatrixXcd eigenvectors;  // columns
  // Distinct levels (grouped within 1e-9) and the initial-state weight on each.
  std::vector<double> levels;
  std::vector<double> overlaps;
};

SpectrumResult diagonalize(const PauliHamiltonian& h, const StateVector& psi);
// Level set with weights given directly; for analytic kernels and tests.
SpectrumResult spectrum_from_levels(std::vector<double> levels, std::vector<double> overlaps);

// exp(-i H t) from the eigendecomposition.
Eigen::MatrixXcd evolution_operator(const PauliHamiltonian& h, double t);

bool anticommutes(const PauliString& r, const PauliString& term);

struct ReversalPart {
  PauliString reversal;
  PauliHamiltonian terms;
};

using ReversalPartition = std::vector<ReversalPart>;

// Greedy: each round picks the Pauli product (weight <= max_weight) that
// anticommutes with the most unassigned terms. Ties go to lower weight, then
// lexicographic qubit subset, then letter order Z < X < Y.
ReversalPartition find_reversal_partition(const PauliHamiltonian& h, int max_weight);

struct ReversalSearchError : std::runtime_error {
  explicit ReversalSearchError(std::vector<PauliString> uncovered);
  std::vector<PauliString> uncovered;
};

// H(q1) CX(q0,q1) Rx(2 c1 t)(q0) Rz(2 c2 t)(q1) CX(q0,q1) H(q1), equal to
// exp(-i t (c1 X_a Z_b + c2 Z_a X_b)) on qubits (a, b) = (q0, q1).
Circuit bond_evolution_circuit(int n_qubits, int a, int b, double c1, double c2, double t);
// Requires the two-qubit c1 XZ + c2 ZX form.
Circuit exact_evolution_circuit(const PauliHamiltonian& h, double t);

struct TrotterInfo {
  int steps = 0;
  double dt = 0.0;         // rescaled so steps * dt == t
  int exponentials = 0;    // two-qubit exponentials emitted
};

// Second-order splitting over even and odd bonds of the periodic chain, with
// adjacent even half-steps merged. The step count is ceil(|t| / dt).
Circuit trotter2_circuit(const PauliHamiltonian& chain, double t, double dt, TrotterInfo* info = nullptr);

// Whether `h` has the chain form; on success fills the per-bond coefficients.
bool chain_coefficients(const PauliHamiltonian& h, std::vector<double>& c1, std::vector<double>& c2);

}  // namespace cgnet
