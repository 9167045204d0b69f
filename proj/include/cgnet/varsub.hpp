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

// Two-qubit variational subspace example.
//
//   N(a, b, g, d) = exp(i d X_j) exp(i d X_k) exp[i(a XX + b YY + g ZZ)]
//
// |A> = N(p)|psi>, |B> = N(p + d)|psi>. Overlap circuits put the ancilla on
// qubit 0 and the system on qubits 1 (j) and 2 (k). The axis names the
// ancilla rotation R_x(pi/2) or R_y(pi/2); with P0 - P1 measured after it:
//
//   method    axis  P0 - P1
//   network   y     +Re<A|B>   (prep R_y, final H)
//   network   x     +Im<A|B>   (prep R_x, final H)
//   hadamard  y     -Re<A|B>   (prep H, final R_y)
//   hadamard  x     -Im<A|B>   (prep H, final R_x)

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cgnet/circuit.hpp"
#include "cgnet/pauli.hpp"
#include "cgnet/rodeo.hpp"
#include "cgnet/statevec.hpp"

namespace cgnet {

struct AnsatzParams {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

struct ParamDelta {
  double d_alpha = 0, d_beta = 0, d_gamma = 0, d_delta = 0;
};

AnsatzParams shifted(const AnsatzParams& p, const ParamDelta& d);
ParamDelta difference(const AnsatzParams& from, const AnsatzParams& to);

// One QAOA layer exp(-i eps H_I) exp(-i lambda H) with H_I = -(X_j + X_k) and
// H = a XX + b YY + c ZZ.
AnsatzParams qaoa_layer_params(double a, double b, double c, double eps, double lambda);

enum class Axis { x, y };
enum class OverlapMethod { network, hadamard };

std::string_view axis_name(Axis a);
std::string_view method_name(OverlapMethod m);
std::optional<OverlapMethod> method_from_name(std::string_view name);

// Two-qubit circuit for N(p).
Circuit build_N_circuit(const AnsatzParams& p);
// Layers applied first to last.
Circuit build_ansatz_circuit(const std::vector<AnsatzParams>& layers);

// N(p) on qubits (1, 2) of a three-qubit register with the five
// transformation gates that turn it into N(p + d).
GateNetwork build_overlap_network(const AnsatzParams& p, const ParamDelta& d);

struct OverlapExtras {
  std::optional<PauliString> u_k;  // Pauli applied to the B branch
  std::optional<Circuit> prep;     // two-qubit initial-state preparation
};

Circuit build_network_overlap_circuit(const AnsatzParams& p, const ParamDelta& d, Axis axis,
                                      const OverlapExtras& extras = {});
// Controlled N(p), then controlled U_k, then controlled N(p + d)^dagger.
Circuit build_hadamard_test_circuit(const AnsatzParams& p, const ParamDelta& d, Axis axis,
                                    const OverlapExtras& extras = {});

// N(p) prep |00>.
StateVector ansatz_state(const AnsatzParams& p, const std::optional<Circuit>& prep = std::nullopt);

struct EstimatorOptions {
  OverlapMethod method = OverlapMethod::network;
  ExecMode mode = ExecMode::exact;
  int n_shots = 1024;  // per axis per term, sampled mode
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> stream_prefix;
  std::optional<Circuit> prep;
};

struct ComplexEstimate {
  cplx value{0.0, 0.0};
  double re_err = 0.0;
  double im_err = 0.0;
};

// <A|U|B> with A = N(a), B = N(b); U = identity when `u` is empty.
ComplexEstimate estimate_pauli_element(const AnsatzParams& a, const AnsatzParams& b,
                                       const std::optional<PauliString>& u, const EstimatorOptions& opt);
ComplexEstimate estimate_overlap(const AnsatzParams& a, const AnsatzParams& b, const EstimatorOptions& opt);
// sum_k c_k <A|U_k|B>; errors add in quadrature.
ComplexEstimate estimate_matrix_element(const AnsatzParams& a, const AnsatzParams& b, const PauliHamiltonian& h,
                                        const EstimatorOptions& opt);

struct SubspaceMatrices {
  Eigen::MatrixXcd S;
  Eigen::MatrixXcd Htilde;
  std::vector<std::string> labels;
};

// Upper triangle estimated, lower triangle filled by conjugation.
SubspaceMatrices build_subspace(const std::vector<AnsatzParams>& basis, const PauliHamiltonian& h,
                                const EstimatorOptions& opt);

struct GeneralizedEig {
  std::vector<double> energies;  // ascending
  int rank = 0;                  // S directions kept
  std::vector<double> s_eigenvalues;
};

struct SingularSubspaceError : std::runtime_error {
  SingularSubspaceError(int rank, std::vector<double> s_eigenvalues);
  int rank;
  std::vector<double> s_eigenvalues;
};

// Symmetrizes S and H, drops S eigendirections below threshold * max
// eigenvalue and diagonalizes H in the remaining orthonormalized basis.
GeneralizedEig solve_generalized_eig(const SubspaceMatrices& m, double svd_threshold = 1e-8);

}  // namespace cgnet
