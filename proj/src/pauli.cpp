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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace cgnet {

namespace {

constexpr double kLevelTolerance = 1e-9;

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

Mat2 letter_matrix(char c) {
  switch (c) {
    case 'I': return mat::identity();
    case 'X': return mat::pauli_x();
    case 'Y': return mat::pauli_y();
    case 'Z': return mat::pauli_z();
  }
  throw std::invalid_argument("bad Pauli letter");
}

void check_size(int n) {
  if (n > kMaxUnitaryQubits) throw std::invalid_argument("too many qubits for dense diagonalization");
}

}  // namespace

PauliString::PauliString(std::string s) : letters(std::move(s)) {
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  for (char c : letters) {
    if (!valid_letter(c)) throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
  }
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(letters.begin(), letters.end(), [](char c) { return c != 'I'; }));
}

PauliHamiltonian::PauliHamiltonian(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("Hamiltonian needs at least one qubit");
}

PauliHamiltonian& PauliHamiltonian::add(double coeff, const PauliString& s) {
  if (!std::isfinite(coeff)) throw std::invalid_argument("coefficient is not finite");
  if (s.n_qubits() != n_qubits_) throw std::invalid_argument("Pauli string length mismatch");
  for (auto& t : terms_) {
    if (t.string == s) {
      t.coeff += coeff;
      return *this;
    }
  }
  terms_.push_back({coeff, s});
  return *this;
}

double PauliHamiltonian::coeff_of(const PauliString& s) const {
  for (const auto& t : terms_) {
    if (t.string == s) return t.coeff;
  }
  return 0.0;
}

double PauliHamiltonian::coefficient_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

HamiltonianParseError::HamiltonianParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

PauliHamiltonian parse_hamiltonian(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::vector<std::pair<double, std::string>> terms;
  std::vector<int> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw HamiltonianParseError(line_no, "expected '<coeff> <letters>'");
    char* end = nullptr;
    const double c = std::strtod(tok[0].c_str(), &end);
    if (end != tok[0].c_str() + tok[0].size() || !std::isfinite(c)) {
      throw HamiltonianParseError(line_no, "bad coefficient '" + tok[0] + "'");
    }
    for (char l : tok[1]) {
      if (!valid_letter(l)) throw HamiltonianParseError(line_no, "bad Pauli letter in '" + tok[1] + "'");
    }
    if (!terms.empty() && tok[1].size() != terms.front().second.size()) {
      throw HamiltonianParseError(line_no, "Pauli string length differs from earlier terms");
    }
    terms.emplace_back(c, tok[1]);
    lines.push_back(line_no);
  }
  if (terms.empty()) throw HamiltonianParseError(line_no, "no terms");
  PauliHamiltonian h(static_cast<int>(terms.front().second.size()));
  for (const auto& [c, s] : terms) h.add(c, s);
  return h;
}

std::string to_text(const PauliHamiltonian& h) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& t : h.terms()) os << t.coeff << ' ' << t.string.letters << '\n';
  return os.str();
}

PauliHamiltonian object_hamiltonian(double c1, double c2) {
  PauliHamiltonian h(2);
  h.add(c1, "XZ").add(c2, "ZX");
  return h;
}

PauliHamiltonian heisenberg(double a, double b, double c) {
  PauliHamiltonian h(2);
  h.add(a, "XX").add(b, "YY").add(c, "ZZ");
  return h;
}

PauliHamiltonian chain_hamiltonian(int n_qubits, double c1, double c2) {
  if (n_qubits < 2) throw std::invalid_argument("chain needs at least two qubits");
  PauliHamiltonian h(n_qubits);
  for (int n = 0; n < n_qubits; ++n) {
    const int m = (n + 1) % n_qubits;
    std::string xz(n_qubits, 'I'), zx(n_qubits, 'I');
    xz[n] = 'X';
    xz[m] = 'Z';
    zx[n] = 'Z';
    zx[m] = 'X';
    h.add(c1, xz).add(c2, zx);
  }
  return h;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& s) {
  check_size(s.n_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : s.letters) {
    const Mat2 l = letter_matrix(c);
    // Earlier letters are more significant: next = m (x) l.
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) next.block<2, 2>(2 * i, 2 * j) = m(i, j) * l;
    }
    m = std::move(next);
  }
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliHamiltonian& h) {
  check_size(h.n_qubits());
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coeff * pauli_matrix(t.string);
  return m;
}

SpectrumResult diagonalize(const PauliHamiltonian& h, const StateVector& psi) {
  if (psi.n_qubits != h.n_qubits()) throw std::invalid_argument("initial state size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_matrix(h));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  SpectrumResult r;
  r.eigenvalues = es.eigenvalues();
  r.eigenvectors = es.eigenvectors();
  const Eigen::VectorXcd proj = r.eigenvectors.adjoint() * psi.amplitudes;
  for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k) {
    const double e = r.eigenvalues(k);
    const double w = std::norm(proj(k));
    if (!r.levels.empty() && std::abs(e - r.levels.back()) <= kLevelTolerance) {
      r.overlaps.back() += w;
    } else {
      r.levels.push_back(e);
      r.overlaps.push_back(w);
    }
  }
  return r;
}

SpectrumResult spectrum_from_levels(std::vector<double> levels, std::vector<double> overlaps) {
  if (levels.size() != overlaps.size() || levels.empty()) throw std::invalid_argument("level/overlap mismatch");
  SpectrumResult r;
  r.levels = std::move(levels);
  r.overlaps = std::move(overlaps);
  r.eigenvalues = Eigen::Map<const Eigen::VectorXd>(r.levels.data(), static_cast<Eigen::Index>(r.levels.size()));
  return r;
}

Eigen::MatrixXcd evolution_operator(const PauliHamiltonian& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_matrix(h));
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

bool anticommutes(const PauliString& r, const PauliString& term) {
  if (r.n_qubits() != term.n_qubits()) throw std::invalid_argument("Pauli string length mismatch");
  int flips = 0;
  for (int i = 0; i < r.n_qubits(); ++i) {
    const char a = r.letters[i], b = term.letters[i];
    if (a != 'I' && b != 'I' && a != b) ++flips;
  }
  return flips % 2 == 1;
}

namespace {

std::string describe(const std::vector<PauliString>& v) {
  std::string s;
  for (const auto& p : v) s += (s.empty() ? "" : ", ") + p.letters;
  return s;
}

// Calls f(candidate) over all Pauli products of exactly weight w, in order.
template <typename F>
void for_each_product(int n, int w, F&& f) {
  static constexpr char kOrder[3] = {'Z', 'X', 'Y'};
  std::vector<int> subset(w);
  for (int i = 0; i < w; ++i) subset[i] = i;
  while (true) {
    std::vector<int> letters(w, 0);
    while (true) {
      std::string s(n, 'I');
      for (int i = 0; i < w; ++i) s[subset[i]] = kOrder[letters[i]];
      f(PauliString(s));
      int k = w - 1;
      while (k >= 0 && letters[k] == 2) letters[k--] = 0;
      if (k < 0) break;
      ++letters[k];
    }
    int k = w - 1;
    while (k >= 0 && subset[k] == n - w + k) --k;
    if (k < 0) break;
    ++subset[k];
    for (int i = k + 1; i < w; ++i) subset[i] = subset[i - 1] + 1;
  }
}

}  // namespace

ReversalSearchError::ReversalSearchError(std::vector<PauliString> terms)
    : std::runtime_error("no reversal gate covers: " + describe(terms)), uncovered(std::move(terms)) {}

ReversalPartition find_reversal_partition(const PauliHamiltonian& h, int max_weight) {
  if (h.terms().empty()) throw std::invalid_argument("empty Hamiltonian");
  const int n = h.n_qubits();
  max_weight = std::min(max_weight, n);
  std::vector<PauliTerm> remaining = h.terms();
  ReversalPartition parts;
  while (!remaining.empty()) {
    std::size_t best_cover = 0;
    PauliString best;
    for (int w = 1; w <= max_weight; ++w) {
      for_each_product(n, w, [&](const PauliString& r) {
        std::size_t cover = 0;
        for (const auto& t : remaining) cover += anticommutes(r, t.string) ? 1 : 0;
        if (cover > best_cover) {
          best_cover = cover;
          best = r;
        }
      });
    }
    if (best_cover == 0) {
      std::vector<PauliString> left;
      for (const auto& t : remaining) left.push_back(t.string);
      throw ReversalSearchError(std::move(left));
    }
    ReversalPart part{best, PauliHamiltonian(n)};
    std::vector<PauliTerm> rest;
    for (const auto& t : remaining) {
      if (anticommutes(best, t.string)) part.terms.add(t.coeff, t.string);
      else rest.push_back(t);
    }
    parts.push_back(std::move(part));
    remaining = std::move(rest);
  }
  return parts;
}

Circuit bond_evolution_circuit(int n_qubits, int a, int b, double c1, double c2, double t) {
  Circuit c(n_qubits);
  c.add(gate::h(b));
  c.add(gate::cnot(a, b));
  c.add(gate::rx(a, 2 * c1 * t));
  c.add(gate::rz(b, 2 * c2 * t));
  c.add(gate::cnot(a, b));
  c.add(gate::h(b));
  return c;
}

Circuit exact_evolution_circuit(const PauliHamiltonian& h, double t) {
  if (h.n_qubits() != 2) throw std::invalid_argument("expected a two-qubit Hamiltonian");
  for (const auto& term : h.terms()) {
    if (term.string.letters != "XZ" && term.string.letters != "ZX") {
      throw std::invalid_argument("term " + term.string.letters + " is not of the XZ/ZX form");
    }
  }
  return bond_evolution_circuit(2, 0, 1, h.coeff_of(PauliString("XZ")), h.coeff_of(PauliString("ZX")), t);
}

bool chain_coefficients(const PauliHamiltonian& h, std::vector<double>& c1, std::vector<double>& c2) {
  const int n = h.n_qubits();
  if (n < 4 || n % 2 != 0) return false;
  c1.assign(n, 0.0);
  c2.assign(n, 0.0);
  for (const auto& t : h.terms()) {
    if (t.string.weight() != 2) return false;
    bool placed = false;
    for (int b = 0; b < n && !placed; ++b) {
      const int m = (b + 1) % n;
      const char x = t.string.letters[b], y = t.string.letters[m];
      if (x == 'X' && y == 'Z') {
        c1[b] += t.coeff;
        placed = true;
      } else if (x == 'Z' && y == 'X') {
        c2[b] += t.coeff;
        placed = true;
      }
    }
    if (!placed) return false;
  }
  return true;
}

Circuit trotter2_circuit(const PauliHamiltonian& chain, double t, double dt, TrotterInfo* info) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (chain.n_qubits() % 2 != 0) throw std::invalid_argument("chain length must be even");
  std::vector<double> c1, c2;
  if (!chain_coefficients(chain, c1, c2)) throw std::invalid_argument("Hamiltonian is not a periodic XZ/ZX chain");
  const int n = chain.n_qubits();
  const int steps = t == 0.0 ? 0 : static_cast<int>(std::ceil(std::abs(t) / dt - 1e-9));
  const double h = steps ? t / steps : 0.0;

  Circuit c(n);
  int exps = 0;
  const auto layer = [&](int parity, double tau) {
    for (int b = parity; b < n; b += 2) {
      c.append(bond_evolution_circuit(n, b, (b + 1) % n, c1[b], c2[b], tau));
      ++exps;
    }
  };
  if (steps > 0) {
    layer(0, h / 2);
    for (int s = 1; s <= steps; ++s) {
      layer(1, h);
      layer(0, s < steps ? h : h / 2);
    }
  }
  if (info) *info = {steps, h, exps};
  return c;
}

}  // namespace cgnet
