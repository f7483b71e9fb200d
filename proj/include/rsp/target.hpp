#pragma once

#include <cmath>
#include <string>

#include "rsp/tensor.hpp"

namespace rsp {

inline constexpr double kNormTolerance = 1e-10;

/// The two-qubit state alpha|00> + beta|11> to be prepared at Bob's side.
class TargetState {
 public:
  /// Throws ArgumentError unless |alpha|^2 + |beta|^2 = 1 within 1e-10.
  TargetState(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
      throw ArgumentError("target amplitudes must satisfy |alpha|^2 + |beta|^2 = 1 (got " +
                          std::to_string(norm2) + ")");
    }
  }

  /// Rescales (alpha, beta) onto the unit sphere first; rejects the zero pair.
  static TargetState normalized(cplx alpha, cplx beta) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ArgumentError("target amplitudes are zero");
    return TargetState(alpha / norm, beta / norm);
  }

  cplx alpha() const noexcept { return alpha_; }
  cplx beta() const noexcept { return beta_; }

  Ket xi() const {
    Ket v = Ket::Zero(4);
    v(0) = alpha_;
    v(3) = beta_;
    return v;
  }

 private:
  cplx alpha_;
  cplx beta_;
};

}  // namespace rsp
