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

#include "cgnet/pauli.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cgnet/transpile.hpp"
#include "oracles.hpp"

namespace cgnet {
namespace {

TEST(PauliHamiltonian, ParseAndRoundTrip) {
  const auto h = parse_hamiltonian("# object\n2.5 XZ\n1.5 ZX  # second\n\n0.5 XZ\n");
  EXPECT_EQ(h.n_qubits(), 2);
  EXPECT_EQ(h.terms().size(), 2u);
  EXPECT_DOUBLE_EQ(h.coeff_of(PauliString("XZ")), 3.0);
  EXPECT_DOUBLE_EQ(h.coefficient_norm(), 4.5);
  const auto back = parse_hamiltonian(to_text(h));
  EXPECT_LT((to_matrix(back) - to_matrix(h)).norm(), 1e-15);
}

TEST(PauliHamiltonian, ParseErrorsCarryLines) {
  EXPECT_THROW(parse_hamiltonian(""), HamiltonianParseError);
  EXPECT_THROW(parse_hamiltonian("# only a comment\n"), HamiltonianParseError);
  const auto line_of = [](const char* text) {
    try {
      parse_hamiltonian(text);
    } catch (const HamiltonianParseError& e) {
      return e.line;
    }
    return -1;
  };
  EXPECT_EQ(line_of("1 XZ\nabc ZX\n"), 2);
  EXPECT_EQ(line_of("1 XZ\n1 ZXY\n"), 2);
  EXPECT_EQ(line_of("1 XQ\n"), 1);
  EXPECT_EQ(line_of("1 XZ extra\n"), 1);
}

TEST(PauliHamiltonian, MatrixMatchesKroneckerOracle) {
  PauliHamiltonian h(3);
  h.add(0.7, "XYZ").add(-1.2, "IZI").add(0.3, "YIX");
  const oracle::Mat expect = 0.7 * oracle::pauli_string("XYZ") - 1.2 * oracle::pauli_string("IZI") +
                             0.3 * oracle::pauli_string("YIX");
  EXPECT_LT((to_matrix(h) - expect).norm(), 1e-14);
}

TEST(Diagonalize, ObjectHamiltonianSpectrum) {
  const auto s = diagonalize(object_hamiltonian(2.5, 1.5), StateVector(2));
  // Oracle: dense Hermitian eigensolve of c1 XZ + c2 ZX and the |00> weights.
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::object_h(2.5, 1.5));
  ASSERT_EQ(s.levels.size(), 4u);
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(s.levels[k], es.eigenvalues()(k), 1e-12);
    EXPECT_NEAR(s.overlaps[k], std::norm(es.eigenvectors()(0, k)), 1e-12);
  }
  const std::vector<double> frozen = {-4, -1, 1, 4};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(s.levels[k], frozen[k], 1e-12);
    EXPECT_NEAR(s.overlaps[k], 0.25, 1e-12);
  }
}

TEST(Diagonalize, EigenstateInputHasSingleOverlap) {
  const auto h = object_hamiltonian(2.5, 1.5);
  const auto s0 = diagonalize(h, StateVector(2));
  const auto psi = StateVector::from_amplitudes(s0.eigenvectors.col(3));
  const auto s = diagonalize(h, psi);
  EXPECT_NEAR(s.overlaps[3], 1.0, 1e-12);
  EXPECT_NEAR(s.overlaps[0] + s.overlaps[1] + s.overlaps[2], 0.0, 1e-12);
}

TEST(Diagonalize, DegenerateLevelsAreGrouped) {
  const auto s = diagonalize(heisenberg(1, 1, 1), StateVector(2));
  ASSERT_EQ(s.levels.size(), 2u);
  EXPECT_NEAR(s.levels[0], -3.0, 1e-12);
  EXPECT_NEAR(s.levels[1], 1.0, 1e-12);
  EXPECT_NEAR(s.overlaps[1], 1.0, 1e-12);
}

TEST(Evolution, OperatorMatchesMatrixExponential) {
  const auto h = chain_hamiltonian(4, 0.8, -0.3);
  EXPECT_LT((evolution_operator(h, 0.9) - oracle::evolution(oracle::chain_h(4, 0.8, -0.3), 0.9)).norm(), 1e-10);
}

TEST(Evolution, BondCircuitIsExact) {
  for (double t : {0.0, 0.37, -1.4}) {
    const Circuit c = bond_evolution_circuit(2, 0, 1, 2.5, 1.5, t);
    const oracle::Mat expect = oracle::evolution(oracle::object_h(2.5, 1.5), t);
    EXPECT_LT(oracle::phase_distance(circuit_to_unitary(c), expect), 1e-10);
    EXPECT_LT((circuit_to_unitary(c) - expect).norm(), 1e-10);
  }
  // Non-adjacent, reversed pair in a wider register.
  const Circuit c = bond_evolution_circuit(4, 3, 1, 0.6, -0.2, 0.8);
  const oracle::Mat h = 0.6 * oracle::pauli_string("IZIX") - 0.2 * oracle::pauli_string("IXIZ");
  EXPECT_LT((circuit_to_unitary(c) - oracle::evolution(h, 0.8)).norm(), 1e-10);
}

TEST(Evolution, ObjectCircuitUsesTwoCnots) {
  const Circuit c = exact_evolution_circuit(object_hamiltonian(2.5, 1.5), 0.5);
  EXPECT_EQ(count_gates(transpile(c, NativeBasis::ibm_cnot_u)).two_qubit, 2);
  EXPECT_THROW(exact_evolution_circuit(heisenberg(1, 1, 1), 0.5), std::invalid_argument);
}

TEST(Anticommutation, Basics) {
  EXPECT_TRUE(anticommutes(PauliString("YI"), PauliString("XZ")));
  EXPECT_TRUE(anticommutes(PauliString("YI"), PauliString("ZX")));
  EXPECT_FALSE(anticommutes(PauliString("XX"), PauliString("YY")));
  EXPECT_FALSE(anticommutes(PauliString("II"), PauliString("ZX")));
}

TEST(ReversalSearch, ObjectHamiltonianUsesY0) {
  const auto parts = find_reversal_partition(object_hamiltonian(2.5, 1.5), 2);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].reversal.letters, "YI");
}

TEST(ReversalSearch, ChainUsesEvenYs) {
  const auto parts = find_reversal_partition(chain_hamiltonian(6, 1.0, 0.5), 6);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].reversal.letters, "YIYIYI");
}

TEST(ReversalSearch, HeisenbergNeedsTwoParts) {
  const auto h = heisenberg(1.0, 0.5, 0.25);
  const auto parts = find_reversal_partition(h, 2);
  ASSERT_EQ(parts.size(), 2u);
  std::size_t covered = 0;
  for (const auto& p : parts) {
    for (const auto& t : p.terms.terms()) {
      EXPECT_TRUE(anticommutes(p.reversal, t.string));
      ++covered;
    }
  }
  EXPECT_EQ(covered, h.terms().size());
}

TEST(ReversalSearch, ImpossibleWeightReportsUncovered) {
  try {
    find_reversal_partition(object_hamiltonian(1, 1), 0);
    FAIL() << "expected ReversalSearchError";
  } catch (const ReversalSearchError& e) {
    EXPECT_EQ(e.uncovered.size(), 2u);
  }
}

TEST(Trotter, ExponentialCountAndStepRounding) {
  for (int n : {4, 6}) {
    TrotterInfo info;
    trotter2_circuit(chain_hamiltonian(n, 1.0, 0.5), 6.0, 0.2, &info);
    EXPECT_EQ(info.steps, 30);
    EXPECT_EQ(info.exponentials, n * 30 + n / 2);
  }
  TrotterInfo info;
  trotter2_circuit(chain_hamiltonian(4, 1.0, 0.5), 1.0, 0.3, &info);
  EXPECT_EQ(info.steps, 4);
  EXPECT_NEAR(info.dt, 0.25, 1e-15);
}

TEST(Trotter, StepIsTimeReversible) {
  const auto h = chain_hamiltonian(4, 0.9, 0.4);
  const Unitary fwd = circuit_to_unitary(trotter2_circuit(h, 0.1, 0.1));
  const Unitary back = circuit_to_unitary(trotter2_circuit(h, -0.1, 0.1));
  EXPECT_LT((back * fwd - Unitary::Identity(16, 16)).norm(), 1e-12);
}

TEST(Trotter, ConvergesToExactEvolution) {
  const auto h = chain_hamiltonian(4, 0.9, 0.4);
  const oracle::Mat exact = oracle::evolution(oracle::chain_h(4, 0.9, 0.4), 1.0);
  const double coarse = (circuit_to_unitary(trotter2_circuit(h, 1.0, 0.1)) - exact).norm();
  const double fine = (circuit_to_unitary(trotter2_circuit(h, 1.0, 0.05)) - exact).norm();
  EXPECT_LT(fine, coarse);
  EXPECT_NEAR(coarse / fine, 4.0, 0.4);
}

TEST(Trotter, RejectsNonChain) {
  EXPECT_THROW(trotter2_circuit(heisenberg(1, 1, 1), 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(trotter2_circuit(chain_hamiltonian(4, 1, 1), 1.0, 0.0), std::invalid_argument);
  std::vector<double> c1, c2;
  EXPECT_TRUE(chain_coefficients(chain_hamiltonian(4, 1.0, 0.5), c1, c2));
  EXPECT_EQ(c1.size(), 4u);
}

}  // namespace
}  // namespace cgnet
