#pragma once

// Slow, direct reference implementations used only by the tests. They build
// full-register matrices explicitly instead of using the library's index
// kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "rsp/gates.hpp"
#include "rsp/tensor.hpp"

namespace oracle {

using rsp::cplx;
using rsp::Ket;
using rsp::Matrix;

inline Matrix kron_all(const std::vector<Matrix>& ms) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& m : ms) {
    Matrix next(out.rows() * m.rows(), out.cols() * m.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = out(i, j) * m;
    out = next;
  }
  return out;
}

/// Permutation matrix sending register qubit order to `order` (1-based):
/// new qubit k is old qubit order[k-1].
inline Matrix permutation(const std::vector<int>& order, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index old = 0; old < dim; ++old) {
    Eigen::Index now = 0;
    for (int k = 0; k < n; ++k) {
      const int bit = (old >> (n - order[k])) & 1;
      now |= Eigen::Index(bit) << (n - 1 - k);
    }
    p(now, old) = 1;
  }
  return p;
}

/// op on `targets`, identity elsewhere: P^T (op (x) I) P with P moving the
/// targets to the front.
inline Matrix lift(const Matrix& op, const std::vector<int>& targets, int n) {
  std::vector<int> order = targets;
  for (int q = 1; q <= n; ++q)
    if (std::find(targets.begin(), targets.end(), q) == targets.end()) order.push_back(q);
  const Matrix p = permutation(order, n);
  const int rest = n - static_cast<int>(targets.size());
  const Matrix id = Matrix::Identity(Eigen::Index{1} << rest, Eigen::Index{1} << rest);
  return p.transpose() * kron_all({op, id}) * p;
}

/// Moves the kept qubits to the front and sums the diagonal blocks of the
/// discarded part.
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& discard, int n) {
  std::vector<int> order;
  for (int q = 1; q <= n; ++q)
    if (std::find(discard.begin(), discard.end(), q) == discard.end()) order.push_back(q);
  const Eigen::Index keep_dim = Eigen::Index{1} << order.size();
  order.insert(order.end(), discard.begin(), discard.end());
  const Matrix p = permutation(order, n);
  const Matrix r = p * rho * p.transpose();
  const Eigen::Index gone_dim = Eigen::Index{1} << discard.size();
  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (Eigen::Index a = 0; a < keep_dim; ++a)
    for (Eigen::Index b = 0; b < keep_dim; ++b)
      for (Eigen::Index e = 0; e < gone_dim; ++e) out(a, b) += r(a * gone_dim + e, b * gone_dim + e);
  return out;
}

inline Matrix apply_kraus(const Matrix& rho, const std::vector<Matrix>& ops,
                          const std::vector<int>& qubits, int n) {
  Matrix out = rho;
  for (int q : qubits) {
    Matrix next = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& e : ops) {
      const Matrix l = lift(e, {q}, n);
      next += l * out * l.adjoint();
    }
    out = next;
  }
  return out;
}

inline Ket random_ket(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Ket v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

inline Matrix random_density(int n, std::mt19937_64& rng, int rank = 3) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Matrix rho = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  double total = 0;
  for (int k = 0; k < rank; ++k) {
    const double w = u(rng);
    const Ket v = random_ket(n, rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

inline Matrix random_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(d, rng));
  return qr.householderQ();
}

}  // namespace oracle
