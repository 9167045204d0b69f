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

// Gate matrix conventions. Every other module gets its matrices from here.
//
//   Rx(t) = exp(-i t X / 2)    Ry(t) = exp(-i t Y / 2)    Rz(t) = exp(-i t Z / 2)
//   P(l)  = U1(l) = diag(1, e^{i l})
//   U3(t, p, l) = [[cos(t/2),          -e^{i l} sin(t/2)],
//                  [e^{i p} sin(t/2),   e^{i(p+l)} cos(t/2)]]
//   U2(p, l) = U3(pi/2, p, l)
//   RZZ(t) = exp(-i t Z(x)Z / 2)
//
// Multi-qubit matrices order their qubits most-significant first.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

namespace cgnet {

using cplx = std::complex<double>;

template <typename Real>
using Mat2T = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real>
using Mat4T = Eigen::Matrix<std::complex<Real>, 4, 4>;

using Mat2 = Mat2T<double>;
using Mat4 = Mat4T<double>;

namespace mat {

template <typename Real = double>
Mat2T<Real> identity() {
  return Mat2T<Real>::Identity();
}

template <typename Real = double>
Mat2T<Real> pauli_x() {
  Mat2T<Real> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
Mat2T<Real> pauli_y() {
  using C = std::complex<Real>;
  Mat2T<Real> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Real = double>
Mat2T<Real> pauli_z() {
  Mat2T<Real> m;
  m << 1, 0, 0, -1;
  return m;
}

template <typename Real = double>
Mat2T<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  Mat2T<Real> m;
  m << s, s, s, -s;
  return m;
}

template <typename Real>
Mat2T<Real> rx(Real theta) {
  using C = std::complex<Real>;
  const Real c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2T<Real> m;
  m << C(c), C(0, -s), C(0, -s), C(c);
  return m;
}

template <typename Real>
Mat2T<Real> ry(Real theta) {
  const Real c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2T<Real> m;
  m << c, -s, s, c;
  return m;
}

template <typename Real>
Mat2T<Real> rz(Real theta) {
  Mat2T<Real> m = Mat2T<Real>::Zero();
  m(0, 0) = std::polar(Real(1), -theta / 2);
  m(1, 1) = std::polar(Real(1), theta / 2);
  return m;
}

template <typename Real>
Mat2T<Real> u1(Real lambda) {
  Mat2T<Real> m = Mat2T<Real>::Identity();
  m(1, 1) = std::polar(Real(1), lambda);
  return m;
}

template <typename Real>
Mat2T<Real> u3(Real theta, Real phi, Real lambda) {
  const Real c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2T<Real> m;
  m(0, 0) = c;
  m(0, 1) = -std::polar(s, lambda);
  m(1, 0) = std::polar(s, phi);
  m(1, 1) = std::polar(c, phi + lambda);
  return m;
}

template <typename Real>
Mat2T<Real> u2(Real phi, Real lambda) {
  return u3(std::numbers::pi_v<Real> / 2, phi, lambda);
}

template <typename Real = double>
Mat4T<Real> cnot() {
  Mat4T<Real> m = Mat4T<Real>::Zero();
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

template <typename Real>
Mat4T<Real> rzz(Real theta) {
  Mat4T<Real> m = Mat4T<Real>::Zero();
  const auto a = std::polar(Real(1), -theta / 2);
  const auto b = std::polar(Real(1), theta / 2);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = a;
  return m;
}

}  // namespace mat
}  // namespace cgnet
