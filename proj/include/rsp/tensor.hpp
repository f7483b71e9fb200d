#pragma once

// Dense complex kernels for small qubit registers.
//
// Basis convention: qubit 1 is the most significant bit of a basis index, so
// the ket |q1 q2 ... qn> sits at index q1*2^(n-1) + ... + qn. Qubit numbers in
// every public signature are 1-based.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/errors.hpp"

namespace rsp {

template <typename Real>
using KetT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using MatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using cplx = std::complex<double>;
using Ket = KetT<double>;
using Matrix = MatrixT<double>;

/// Largest matrix dimension a tensor product may produce.
inline constexpr Eigen::Index kDefaultMaxDim = Eigen::Index{1} << 14;

namespace detail {

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Bit offset (from the least significant end) of 1-based qubit q in an
/// n-qubit register.
inline int bit_of(int q, int n) { return n - q; }

inline std::vector<int> validated_targets(std::span<const int> targets, int n) {
  std::vector<int> t(targets.begin(), targets.end());
  if (t.empty()) throw ArgumentError("qubit list is empty");
  for (int q : t) {
    if (q < 1 || q > n) {
      throw ArgumentError("qubit " + std::to_string(q) + " out of range 1.." + std::to_string(n));
    }
  }
  auto sorted = t;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ArgumentError("repeated qubit in target list");
  }
  return t;
}

/// offsets[j] = full-register index contribution of local index j, where bit
/// (k-1-i) of j is the value of targets[i].
inline std::vector<Eigen::Index> spread_offsets(const std::vector<int>& targets, int n) {
  const int k = static_cast<int>(targets.size());
  std::vector<Eigen::Index> offsets(std::size_t{1} << k, 0);
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    Eigen::Index off = 0;
    for (int i = 0; i < k; ++i) {
      if ((j >> (k - 1 - i)) & 1U) off |= Eigen::Index{1} << bit_of(targets[i], n);
    }
    offsets[j] = off;
  }
  return offsets;
}

template <typename Real>
void apply_columns(const MatrixT<Real>& op, const std::vector<int>& targets, int n,
                   MatrixT<Real>& m) {
  const auto offsets = spread_offsets(targets, n);
  const Eigen::Index local = static_cast<Eigen::Index>(offsets.size());
  Eigen::Index mask = 0;
  for (auto o : offsets) mask |= o;
  KetT<Real> gathered(local);
  KetT<Real> out(local);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (Eigen::Index base = 0; base < m.rows(); ++base) {
      if (base & mask) continue;
      for (Eigen::Index j = 0; j < local; ++j) gathered(j) = m(base | offsets[j], col);
      out.noalias() = op * gathered;
      for (Eigen::Index j = 0; j < local; ++j) m(base | offsets[j], col) = out(j);
    }
  }
}

}  // namespace detail

/// Number of qubits of a register with the given Hilbert dimension.
inline int qubit_count(Eigen::Index dim) {
  if (!detail::is_power_of_two(dim)) {
    throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

template <typename Real = double>
KetT<Real> basis_ket(int n_qubits, Eigen::Index index) {
  KetT<Real> v = KetT<Real>::Zero(Eigen::Index{1} << n_qubits);
  v(index) = 1;
  return v;
}

/// Computational basis ket from a bit string such as "0110".
template <typename Real = double>
KetT<Real> ket(std::string_view bits) {
  Eigen::Index index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ArgumentError("ket string must contain only 0 and 1");
    index = (index << 1) | (c == '1' ? 1 : 0);
  }
  return basis_ket<Real>(static_cast<int>(bits.size()), index);
}

template <typename Real>
KetT<Real> kron(const KetT<Real>& a, const KetT<Real>& b, Eigen::Index max_dim = kDefaultMaxDim) {
  if (a.size() * b.size() > max_dim) throw CapacityError("tensor product exceeds register capacity");
  KetT<Real> out = Eigen::kroneckerProduct(a, b);
  return out;
}

template <typename Real>
MatrixT<Real> kron(const MatrixT<Real>& a, const MatrixT<Real>& b,
                   Eigen::Index max_dim = kDefaultMaxDim) {
  if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim) {
    throw CapacityError("tensor product exceeds register capacity");
  }
  MatrixT<Real> out = Eigen::kroneckerProduct(a, b);
  return out;
}

/// Applies `op` to the listed qubits of a pure state. targets[0] is the most
/// significant qubit of op's own index.
template <typename Real>
KetT<Real> apply_to_qubits(const MatrixT<Real>& op, std::span<const int> targets,
                           const KetT<Real>& state) {
  const int n = qubit_count(state.size());
  const auto t = detail::validated_targets(targets, n);
  if (op.rows() != op.cols() || op.rows() != (Eigen::Index{1} << t.size())) {
    throw ArgumentError("operator dimension does not match target count");
  }
  MatrixT<Real> m = state;
  detail::apply_columns(op, t, n, m);
  return m.col(0);
}

/// O rho O^dagger with O acting on the listed qubits.
template <typename Real>
MatrixT<Real> apply_to_qubits(const MatrixT<Real>& op, std::span<const int> targets,
                              const MatrixT<Real>& rho) {
  const int n = qubit_count(rho.rows());
  if (rho.rows() != rho.cols()) throw ArgumentError("density matrix must be square");
  const auto t = detail::validated_targets(targets, n);
  if (op.rows() != op.cols() || op.rows() != (Eigen::Index{1} << t.size())) {
    throw ArgumentError("operator dimension does not match target count");
  }
  MatrixT<Real> m = rho;
  detail::apply_columns(op, t, n, m);
  MatrixT<Real> adj = m.adjoint();
  detail::apply_columns(op, t, n, adj);
  return adj.adjoint();
}

template <typename Real>
KetT<Real> apply_to_qubits(const MatrixT<Real>& op, std::initializer_list<int> targets,
                           const KetT<Real>& state) {
  return apply_to_qubits(op, std::span<const int>(targets.begin(), targets.size()), state);
}

template <typename Real>
MatrixT<Real> apply_to_qubits(const MatrixT<Real>& op, std::initializer_list<int> targets,
                              const MatrixT<Real>& rho) {
  return apply_to_qubits(op, std::span<const int>(targets.begin(), targets.size()), rho);
}

/// Traces out `discard`; the remaining qubits keep their relative order.
template <typename Real>
MatrixT<Real> partial_trace(const MatrixT<Real>& rho, std::span<const int> discard) {
  if (rho.rows() != rho.cols()) throw ArgumentError("density matrix must be square");
  const int n = qubit_count(rho.rows());
  const auto gone = detail::validated_targets(discard, n);
  if (static_cast<int>(gone.size()) >= n) throw ArgumentError("cannot discard every qubit");

  std::vector<int> kept;
  for (int q = 1; q <= n; ++q) {
    if (std::find(gone.begin(), gone.end(), q) == gone.end()) kept.push_back(q);
  }
  const auto keep_off = detail::spread_offsets(kept, n);
  const auto gone_off = detail::spread_offsets(gone, n);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());

  MatrixT<Real> out = MatrixT<Real>::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      std::complex<Real> sum{0};
      for (auto e : gone_off) sum += rho(keep_off[a] | e, keep_off[b] | e);
      out(a, b) = sum;
    }
  }
  return out;
}

template <typename Real>
MatrixT<Real> partial_trace(const MatrixT<Real>& rho, std::initializer_list<int> discard) {
  return partial_trace(rho, std::span<const int>(discard.begin(), discard.size()));
}

template <typename Real>
MatrixT<Real> outer(const KetT<Real>& v) {
  return v * v.adjoint();
}

template <typename Real>
bool is_unitary(const MatrixT<Real>& op, Real tol = Real(1e-10)) {
  if (op.rows() != op.cols()) return false;
  const MatrixT<Real> residual = op.adjoint() * op - MatrixT<Real>::Identity(op.rows(), op.cols());
  return residual.cwiseAbs().maxCoeff() <= tol;
}

template <typename Real>
struct DensityReport {
  Real hermiticity_residual;  // max |rho - rho^dagger| entry
  Real trace_residual;        // |tr rho - 1|
  Real min_eigenvalue;        // of the Hermitian part

  bool valid(Real herm_tol = Real(1e-10), Real trace_tol = Real(1e-10),
             Real eig_floor = Real(-1e-9)) const {
    return hermiticity_residual <= herm_tol && trace_residual <= trace_tol &&
           min_eigenvalue >= eig_floor;
  }
};

template <typename Real>
DensityReport<Real> check_density(const MatrixT<Real>& rho) {
  if (rho.rows() != rho.cols()) throw ArgumentError("density matrix must be square");
  qubit_count(rho.rows());
  const MatrixT<Real> skew = rho - rho.adjoint();
  const MatrixT<Real> herm = (rho + rho.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<MatrixT<Real>> solver(herm, Eigen::EigenvaluesOnly);
  return {skew.cwiseAbs().maxCoeff(), std::abs(rho.trace() - std::complex<Real>(1)),
          solver.eigenvalues().minCoeff()};
}

}  // namespace rsp
