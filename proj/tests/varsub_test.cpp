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

#include "cgnet/varsub.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cgnet/transpile.hpp"
#include "oracles.hpp"

namespace cgnet {
namespace {

const cplx kI(0, 1);

AnsatzParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  return {u(rng), u(rng), u(rng), u(rng)};
}

// Oracle state N(p) prep|00> from dense exponentials.
oracle::Vec oracle_state(const AnsatzParams& p, const oracle::Mat& prep) {
  return oracle::n_operator(p.alpha, p.beta, p.gamma, p.delta) * prep * oracle::basis(2, 0);
}

Circuit flip_second() {
  Circuit c(2);
  c.add(gate::x(1));
  return c;
}

TEST(NCircuit, ZeroParamsIsIdentity) {
  EXPECT_LT(oracle::phase_distance(circuit_to_unitary(build_N_circuit({})), oracle::Mat::Identity(4, 4)), 1e-12);
}

TEST(NCircuit, MatchesDenseExponential) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 25; ++i) {
    const auto p = random_params(rng);
    const oracle::Mat expect = oracle::n_operator(p.alpha, p.beta, p.gamma, p.delta);
    EXPECT_LT(oracle::phase_distance(circuit_to_unitary(build_N_circuit(p)), expect), 1e-9);
  }
}

TEST(NCircuit, InverseCircuitUndoesN) {
  const AnsatzParams p{0.3, -0.7, 1.1, 0.4};
  const Unitary inv = circuit_to_unitary(inverse(build_N_circuit(p))) * circuit_to_unitary(build_N_circuit(p));
  EXPECT_LT(oracle::phase_distance(inv, oracle::Mat::Identity(4, 4)), 1e-12);
}

TEST(NCircuit, QaoaLayerMapping) {
  const double a = 1.0, b = 0.6, c = -0.4, eps = 0.35, lambda = 0.8;
  const oracle::Mat h = oracle::heisenberg_h(a, b, c);
  const oracle::Mat hi = -(oracle::pauli_string("XI") + oracle::pauli_string("IX"));
  const oracle::Mat expect = oracle::expm(-kI * eps * hi) * oracle::expm(-kI * lambda * h);
  const Circuit layer = build_ansatz_circuit({qaoa_layer_params(a, b, c, eps, lambda)});
  EXPECT_LT(oracle::phase_distance(circuit_to_unitary(layer), expect), 1e-10);
}

TEST(Network, BranchesAreNAndShiftedN) {
  const AnsatzParams p{0.2, 0.5, -0.3, 0.9};
  const ParamDelta d{0.1, -0.4, 0.25, 0.3};
  const auto net = build_overlap_network(p, d);
  const Unitary off = circuit_to_unitary(realize_network(net, NetworkMode::off));
  const Unitary on = circuit_to_unitary(realize_network(net, NetworkMode::on));
  const oracle::Mat na = oracle::n_operator(0.2, 0.5, -0.3, 0.9);
  const oracle::Mat nb = oracle::n_operator(0.3, 0.1, -0.05, 1.2);
  EXPECT_LT(oracle::phase_distance(off.bottomRightCorner(4, 4), na), 1e-10);
  EXPECT_LT(oracle::phase_distance(on.bottomRightCorner(4, 4), nb), 1e-10);
}

TEST(Overlap, ZeroShiftGivesUnitOverlap) {
  const AnsatzParams p{0.4, -0.2, 0.9, 0.3};
  for (auto method : {OverlapMethod::network, OverlapMethod::hadamard}) {
    EstimatorOptions opt;
    opt.method = method;
    EXPECT_NEAR(std::abs(estimate_overlap(p, p, opt).value - cplx(1, 0)), 0.0, 1e-12);
  }
}

TEST(Overlap, BothMethodsMatchInnerProductOracle) {
  std::mt19937_64 rng(33);
  const oracle::Mat prep = oracle::embed(oracle::pauli('X'), 1, 2);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_params(rng), b = random_params(rng);
    const cplx expect = oracle_state(a, prep).dot(oracle_state(b, prep));
    for (auto method : {OverlapMethod::network, OverlapMethod::hadamard}) {
      EstimatorOptions opt;
      opt.method = method;
      opt.prep = flip_second();
      const auto got = estimate_overlap(a, b, opt).value;
      EXPECT_LT(std::abs(got - expect), 1e-9) << method_name(method);
      EXPECT_LE(std::abs(got), 1.0 + 1e-12);
    }
  }
}

TEST(MatrixElement, MatchesDenseOracleAndIsHermitian) {
  std::mt19937_64 rng(44);
  const auto h = heisenberg(1.0, 0.7, -0.4);
  const oracle::Mat hm = oracle::heisenberg_h(1.0, 0.7, -0.4);
  const oracle::Mat id = oracle::Mat::Identity(4, 4);
  for (int i = 0; i < 10; ++i) {
    const auto a = random_params(rng), b = random_params(rng);
    const cplx expect = oracle_state(a, id).dot(hm * oracle_state(b, id));
    EstimatorOptions net, had;
    had.method = OverlapMethod::hadamard;
    const cplx x = estimate_matrix_element(a, b, h, net).value;
    EXPECT_LT(std::abs(x - expect), 1e-9);
    EXPECT_LT(std::abs(estimate_matrix_element(a, b, h, had).value - expect), 1e-9);
    EXPECT_LT(std::abs(estimate_matrix_element(b, a, h, net).value - std::conj(x)), 1e-9);
  }
}

TEST(MatrixElement, IdentityTermScalesOverlap) {
  PauliHamiltonian h(2);
  h.add(2.5, "II");
  const AnsatzParams a{0.1, 0.2, 0.3, 0.4}, b{-0.3, 0.5, 0.2, 0.1};
  EstimatorOptions opt;
  EXPECT_LT(std::abs(estimate_matrix_element(a, b, h, opt).value - 2.5 * estimate_overlap(a, b, opt).value), 1e-12);
}

TEST(Counts, NetworkAndHadamardTest) {
  const AnsatzParams p{0.37, -0.61, 0.83, 0.29};
  const ParamDelta d{0.11, 0.23, -0.17, 0.41};
  for (Axis axis : {Axis::x, Axis::y}) {
    const Circuit net = build_network_overlap_circuit(p, d, axis);
    const Circuit had = build_hadamard_test_circuit(p, d, axis);
    EXPECT_EQ(count_gates(transpile(net, NativeBasis::ibm_cnot_u)), (GateCount{13, 21}));
    EXPECT_EQ(count_gates(transpile(had, NativeBasis::ibm_cnot_u)), (GateCount{64, 82}));
  }
}

TEST(Sampled, EstimatesWithinErrorBars) {
  const AnsatzParams a{0.2, 0.4, -0.1, 0.3}, b{0.5, -0.2, 0.3, 0.1};
  EstimatorOptions exact, sampled;
  sampled.mode = ExecMode::sampled;
  sampled.n_shots = 20000;
  sampled.seed = 7;
  const auto e = estimate_overlap(a, b, exact);
  const auto s = estimate_overlap(a, b, sampled);
  EXPECT_GT(s.re_err, 0.0);
  EXPECT_LT(std::abs(s.value.real() - e.value.real()), 4 * s.re_err);
  EXPECT_LT(std::abs(s.value.imag() - e.value.imag()), 4 * s.im_err);
  const auto again = estimate_overlap(a, b, sampled);
  EXPECT_EQ(again.value, s.value);
  sampled.n_shots = 0;
  EXPECT_THROW(estimate_overlap(a, b, sampled), std::invalid_argument);
}

TEST(GeneralizedEig, OneByOneIsRayleighQuotient) {
  SubspaceMatrices m;
  m.S = Eigen::MatrixXcd::Constant(1, 1, 2.0);
  m.Htilde = Eigen::MatrixXcd::Constant(1, 1, -3.0);
  const auto g = solve_generalized_eig(m);
  ASSERT_EQ(g.energies.size(), 1u);
  EXPECT_NEAR(g.energies[0], -1.5, 1e-14);
}

TEST(GeneralizedEig, SubspaceSpanningGroundStateRecoversMinusThree) {
  EstimatorOptions opt;
  opt.prep = flip_second();
  const auto h = heisenberg(1, 1, 1);
  // |01> and exp(i 0.4 XX)|01> span {|01>, |10>}, which holds the singlet.
  const auto m = build_subspace({AnsatzParams{}, AnsatzParams{0.4, 0, 0, 0}}, h, opt);
  const auto g = solve_generalized_eig(m);
  EXPECT_EQ(g.rank, 2);
  EXPECT_NEAR(g.energies.front(), -3.0, 1e-8);
}

TEST(GeneralizedEig, DuplicateBasisVectorIsProjectedOut) {
  EstimatorOptions opt;
  opt.prep = flip_second();
  const auto h = heisenberg(1, 1, 1);
  const AnsatzParams a{}, b{0.4, 0, 0, 0};
  const auto g2 = solve_generalized_eig(build_subspace({a, b}, h, opt));
  const auto g3 = solve_generalized_eig(build_subspace({a, b, b}, h, opt));
  EXPECT_EQ(g3.rank, 2);
  ASSERT_EQ(g3.energies.size(), g2.energies.size());
  for (std::size_t i = 0; i < g2.energies.size(); ++i) EXPECT_NEAR(g3.energies[i], g2.energies[i], 1e-8);
}

TEST(GeneralizedEig, MonotoneAndBoundedBelow) {
  std::mt19937_64 rng(55);
  const auto h = heisenberg(1.0, 0.5, 0.8);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::heisenberg_h(1.0, 0.5, 0.8));
  const double ground = es.eigenvalues()(0);
  EstimatorOptions opt;
  opt.prep = flip_second();
  std::vector<AnsatzParams> basis;
  double last = 1e300;
  for (int k = 0; k < 4; ++k) {
    basis.push_back(random_params(rng));
    const double low = solve_generalized_eig(build_subspace(basis, h, opt)).energies.front();
    EXPECT_LE(low, last + 1e-9);
    EXPECT_GE(low, ground - 1e-9);
    last = low;
  }
}

TEST(GeneralizedEig, Errors) {
  SubspaceMatrices m;
  m.S = Eigen::MatrixXcd::Zero(2, 2);
  m.Htilde = Eigen::MatrixXcd::Zero(2, 2);
  EXPECT_THROW(solve_generalized_eig(m), SingularSubspaceError);
  m.Htilde = Eigen::MatrixXcd::Zero(3, 3);
  EXPECT_THROW(solve_generalized_eig(m), std::invalid_argument);
}

}  // namespace
}  // namespace cgnet
