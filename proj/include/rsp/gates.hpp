#pragma once

#include <cmath>

#include "rsp/tensor.hpp"

namespace rsp::gates {

template <typename Real = double>
MatrixT<Real> identity(int n_qubits = 1) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return MatrixT<Real>::Identity(d, d);
}

template <typename Real = double>
MatrixT<Real> pauli_x() {
  MatrixT<Real> m(2, 2);
  m << 0, 1,
       1, 0;
  return m;
}

template <typename Real = double>
MatrixT<Real> pauli_y() {
  using C = std::complex<Real>;
  MatrixT<Real> m(2, 2);
  m << C(0), C(0, -1),
       C(0, 1), C(0);
  return m;
}

template <typename Real = double>
MatrixT<Real> pauli_z() {
  MatrixT<Real> m(2, 2);
  m << 1, 0,
       0, -1;
  return m;
}

template <typename Real = double>
MatrixT<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  MatrixT<Real> m(2, 2);
  m << s, s,
       s, -s;
  return m;
}

/// Controlled-NOT on a qubit pair; the first listed qubit is the control.
template <typename Real = double>
MatrixT<Real> cnot() {
  MatrixT<Real> m = MatrixT<Real>::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

}  // namespace rsp::gates
