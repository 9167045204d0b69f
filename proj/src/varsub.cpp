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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cgnet/rng.hpp"

namespace cgnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Base gates of N(p) on system qubits (j, k).
std::vector<GateOp> n_ops(const AnsatzParams& p, int j, int k) {
  return {gate::rz(k, -kPi / 2),
          gate::cnot(k, j),
          gate::rz(j, kPi / 2 - 2 * p.gamma),
          gate::ry(k, 2 * p.alpha - kPi / 2),
          gate::cnot(j, k),
          gate::ry(k, kPi / 2 - 2 * p.beta),
          gate::cnot(k, j),
          gate::rz(j, kPi / 2),
          gate::rx(k, -2 * p.delta),
          gate::rx(j, -2 * p.delta)};
}

GateOp axis_rotation(Axis axis, int q) { return axis == Axis::x ? gate::rx(q, kPi / 2) : gate::ry(q, kPi / 2); }

void add_prep(Circuit& c, const std::optional<Circuit>& prep) {
  if (!prep) return;
  if (prep->n_qubits() != 2 || prep->has_measurement()) {
    throw std::invalid_argument("prep must be a two-qubit circuit without measurements");
  }
  c.append_mapped(*prep, {1, 2});
}

void add_controlled_pauli(Circuit& c, const std::optional<PauliString>& u) {
  if (!u) return;
  if (u->n_qubits() != 2) throw std::invalid_argument("U_k must act on two qubits");
  for (int q = 0; q < 2; ++q) {
    if (u->letters[q] != 'I') c.add(with_control(gate::pauli(u->letters[q], q + 1), {0, 1}));
  }
}

Circuit without_measurements(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (const auto& op : c.ops()) {
    if (op.kind != GateKind::Measure) out.add(op);
  }
  return out;
}

struct AxisReading {
  double value = 0.0;  // P0 - P1
  double err = 0.0;
};

AxisReading read_ancilla(const Circuit& c, const EstimatorOptions& opt, std::vector<std::uint64_t> path) {
  StateVector state(c.n_qubits());
  apply_circuit(state, without_measurements(c));
  const double p0 = std::clamp(probability_of(state, 0, 0), 0.0, 1.0);
  if (opt.mode == ExecMode::exact) return {2 * p0 - 1, 0.0};
  if (opt.n_shots < 1) throw std::invalid_argument("sampled mode needs a positive shot budget");
  auto rng = make_stream(opt.seed, path);
  const int zeros = std::binomial_distribution<int>(opt.n_shots, p0)(rng);
  const double ph = static_cast<double>(zeros) / opt.n_shots;
  return {2 * ph - 1, 2 * std::sqrt(ph * (1 - ph) / opt.n_shots)};
}

ComplexEstimate element_with_path(const AnsatzParams& a, const AnsatzParams& b, const std::optional<PauliString>& u,
                                  const EstimatorOptions& opt, const std::vector<std::uint64_t>& path) {
  const ParamDelta d = difference(a, b);
  const OverlapExtras extras{u, opt.prep};
  const bool net = opt.method == OverlapMethod::network;
  const auto build = [&](Axis axis) {
    return net ? build_network_overlap_circuit(a, d, axis, extras) : build_hadamard_test_circuit(a, d, axis, extras);
  };
  auto re_path = path, im_path = path;
  re_path.push_back(0);
  im_path.push_back(1);
  const AxisReading re = read_ancilla(build(Axis::y), opt, re_path);
  const AxisReading im = read_ancilla(build(Axis::x), opt, im_path);
  const double sign = net ? 1.0 : -1.0;
  return {cplx(sign * re.value, sign * im.value), re.err, im.err};
}

}  // namespace

AnsatzParams shifted(const AnsatzParams& p, const ParamDelta& d) {
  return {p.alpha + d.d_alpha, p.beta + d.d_beta, p.gamma + d.d_gamma, p.delta + d.d_delta};
}

ParamDelta difference(const AnsatzParams& from, const AnsatzParams& to) {
  return {to.alpha - from.alpha, to.beta - from.beta, to.gamma - from.gamma, to.delta - from.delta};
}

AnsatzParams qaoa_layer_params(double a, double b, double c, double eps, double lambda) {
  return {-lambda * a, -lambda * b, -lambda * c, eps};
}

std::string_view axis_name(Axis a) { return a == Axis::x ? "x" : "y"; }

std::string_view method_name(OverlapMethod m) { return m == OverlapMethod::network ? "network" : "hadamard"; }

std::optional<OverlapMethod> method_from_name(std::string_view name) {
  if (name == "network") return OverlapMethod::network;
  if (name == "hadamard") return OverlapMethod::hadamard;
  return std::nullopt;
}

Circuit build_N_circuit(const AnsatzParams& p) {
  Circuit c(2);
  for (auto& op : n_ops(p, 0, 1)) c.add(std::move(op));
  return c;
}

Circuit build_ansatz_circuit(const std::vector<AnsatzParams>& layers) {
  Circuit c(2);
  for (const auto& p : layers) c.append(build_N_circuit(p));
  return c;
}

GateNetwork build_overlap_network(const AnsatzParams& p, const ParamDelta& d) {
  constexpr int j = 1, k = 2;
  GateNetwork net;
  net.ancilla = 0;
  net.base = Circuit(3);
  for (auto& op : n_ops(p, j, k)) net.base.add(std::move(op));
  net.transforms = {{3, gate::rz(j, -2 * d.d_gamma)},
                    {4, gate::ry(k, 2 * d.d_alpha)},
                    {6, gate::ry(k, -2 * d.d_beta)},
                    {10, gate::rx(k, -2 * d.d_delta)},
                    {10, gate::rx(j, -2 * d.d_delta)}};
  return net;
}

Circuit build_network_overlap_circuit(const AnsatzParams& p, const ParamDelta& d, Axis axis,
                                      const OverlapExtras& extras) {
  Circuit c(3);
  c.add(axis_rotation(axis, 0));
  add_prep(c, extras.prep);
  c.append(realize_network(build_overlap_network(p, d), NetworkMode::controlled));
  add_controlled_pauli(c, extras.u_k);
  c.add(gate::h(0));
  c.add(gate::measure(0));
  return c;
}

Circuit build_hadamard_test_circuit(const AnsatzParams& p, const ParamDelta& d, Axis axis,
                                    const OverlapExtras& extras) {
  const std::vector<int> system = {1, 2};
  Circuit c(3);
  c.add(gate::h(0));
  add_prep(c, extras.prep);
  c.append(controlled(remap(build_N_circuit(p), system, 3), {0, 1}));
  add_controlled_pauli(c, extras.u_k);
  c.append(controlled(remap(inverse(build_N_circuit(shifted(p, d))), system, 3), {0, 1}));
  c.add(axis_rotation(axis, 0));
  c.add(gate::measure(0));
  return c;
}

StateVector ansatz_state(const AnsatzParams& p, const std::optional<Circuit>& prep) {
  StateVector s(2);
  if (prep) apply_circuit(s, *prep);
  apply_circuit(s, build_N_circuit(p));
  return s;
}

ComplexEstimate estimate_pauli_element(const AnsatzParams& a, const AnsatzParams& b,
                                       const std::optional<PauliString>& u, const EstimatorOptions& opt) {
  return element_with_path(a, b, u, opt, opt.stream_prefix);
}

ComplexEstimate estimate_overlap(const AnsatzParams& a, const AnsatzParams& b, const EstimatorOptions& opt) {
  return estimate_pauli_element(a, b, std::nullopt, opt);
}

ComplexEstimate estimate_matrix_element(const AnsatzParams& a, const AnsatzParams& b, const PauliHamiltonian& h,
                                        const EstimatorOptions& opt) {
  if (h.n_qubits() != 2) throw std::invalid_argument("the variational example is two-qubit");
  ComplexEstimate total;
  double re_var = 0.0, im_var = 0.0;
  for (std::size_t t = 0; t < h.terms().size(); ++t) {
    const auto& term = h.terms()[t];
    std::optional<PauliString> u;
    if (term.string.weight() > 0) u = term.string;
    auto path = opt.stream_prefix;
    path.push_back(t);
    const ComplexEstimate e = element_with_path(a, b, u, opt, path);
    total.value += term.coeff * e.value;
    re_var += std::pow(term.coeff * e.re_err, 2);
    im_var += std::pow(term.coeff * e.im_err, 2);
  }
  total.re_err = std::sqrt(re_var);
  total.im_err = std::sqrt(im_var);
  return total;
}

SubspaceMatrices build_subspace(const std::vector<AnsatzParams>& basis, const PauliHamiltonian& h,
                                const EstimatorOptions& opt) {
  if (basis.empty()) throw std::invalid_argument("need at least one parameter set");
  const auto n = static_cast<Eigen::Index>(basis.size());
  SubspaceMatrices m;
  m.S = Eigen::MatrixXcd::Zero(n, n);
  m.Htilde = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::ostringstream label;
    label << "N(" << basis[i].alpha << "," << basis[i].beta << "," << basis[i].gamma << "," << basis[i].delta << ")";
    m.labels.push_back(label.str());
    for (Eigen::Index j = i; j < n; ++j) {
      EstimatorOptions o = opt;
      o.stream_prefix.push_back(static_cast<std::uint64_t>(i));
      o.stream_prefix.push_back(static_cast<std::uint64_t>(j));
      auto os = o, oh = o;
      os.stream_prefix.push_back(0);
      oh.stream_prefix.push_back(1);
      m.S(i, j) = estimate_overlap(basis[i], basis[j], os).value;
      m.Htilde(i, j) = estimate_matrix_element(basis[i], basis[j], h, oh).value;
      if (i == j) {
        m.S(i, i) = m.S(i, i).real();
        m.Htilde(i, i) = m.Htilde(i, i).real();
      } else {
        m.S(j, i) = std::conj(m.S(i, j));
        m.Htilde(j, i) = std::conj(m.Htilde(i, j));
      }
    }
  }
  return m;
}

SingularSubspaceError::SingularSubspaceError(int rank_, std::vector<double> s_eigs)
    : std::runtime_error("overlap matrix has no directions above threshold"), rank(rank_),
      s_eigenvalues(std::move(s_eigs)) {}

GeneralizedEig solve_generalized_eig(const SubspaceMatrices& m, double svd_threshold) {
  if (m.S.rows() != m.S.cols() || m.Htilde.rows() != m.Htilde.cols() || m.S.rows() != m.Htilde.rows()) {
    throw std::invalid_argument("S and H must be square and of equal size");
  }
  if (m.S.rows() == 0) throw std::invalid_argument("empty subspace");
  const Eigen::MatrixXcd S = (m.S + m.S.adjoint()) / 2.0;
  const Eigen::MatrixXcd H = (m.Htilde + m.Htilde.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> se(S);
  GeneralizedEig out;
  for (Eigen::Index i = 0; i < se.eigenvalues().size(); ++i) out.s_eigenvalues.push_back(se.eigenvalues()(i));
  const double top = se.eigenvalues().maxCoeff();
  std::vector<Eigen::Index> keep;
  if (top > 0) {
    for (Eigen::Index i = 0; i < se.eigenvalues().size(); ++i) {
      if (se.eigenvalues()(i) > svd_threshold * top) keep.push_back(i);
    }
  }
  out.rank = static_cast<int>(keep.size());
  if (keep.empty()) throw SingularSubspaceError(0, out.s_eigenvalues);
  Eigen::MatrixXcd X(S.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    X.col(static_cast<Eigen::Index>(c)) = se.eigenvectors().col(keep[c]) / std::sqrt(se.eigenvalues()(keep[c]));
  }
  const Eigen::MatrixXcd Hp = X.adjoint() * H * X;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> he((Hp + Hp.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < he.eigenvalues().size(); ++i) out.energies.push_back(he.eigenvalues()(i));
  return out;
}

}  // namespace cgnet
