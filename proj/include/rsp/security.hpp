#pragma once

// Inside attack through an entangling map on Alice's qubit, and the
// decoy-based check against an outside eavesdropper.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/protocol.hpp"

namespace rsp::analysis {

/// Eve's map |a>_A|E> -> |0>_A|eps_a0> + |1>_A|eps_a1> on Alice's qubit.
struct AttackParams {
  int env_dim = 2;
  Ket eps00, eps01, eps10, eps11;

  /// eps00 = eps11 = |0>_E, eps01 = eps10 = 0.
  static AttackParams trivial(int env_dim = 2);
  /// Haar-like draw: the two images are the columns of a random 2d x 2
  /// isometry obtained from a QR factorization.
  static AttackParams random(int env_dim, std::mt19937_64& rng);

  /// Throws ArgumentError naming the violated constraint.
  void validate(double tol = 1e-10) const;

  /// (2 env_dim) x 2 matrix, qubit A most significant. Column a is the image
  /// of |a>_A|E>.
  Matrix isometry() const;
  /// max |V^dagger V - I| entry.
  double isometry_residual() const;
};

struct PurityChain {
  // Successively looser upper bounds on tr(rho_AE^2), each 2c^2(1 + x^2) with
  // c = 1/2 and x one of
  //   |<e00|e10> + <e01|e11>|,
  //   |<e00|e10>| + |<e01|e11>|,
  //   sqrt(n00 n10) + sqrt(n01 n11),
  //   (n00 + n10)/2 + (n01 + n11)/2,   n_ab = <e_ab|e_ab>.
  double bound[4];
  bool holds(double purity, double tol = 1e-10) const;
};

PurityChain purity_chain(const AttackParams& params);

struct InsideAttackReport {
  Matrix rho_ae;             // normalized, qubit A then environment
  double raw_weight;         // probability of the Charlie/David outcome
  double purity;             // tr(rho_AE^2)
  double env_purity;         // purity of the environment marginal
  double isometry_residual;
  /// Largest trace distance between Eve's marginals for different targets;
  /// zero means the attack learns nothing about (alpha, beta).
  double target_dependence;
  PurityChain chain;
};

/// Applies the attack to qubit A of the branch state left after Charlie and
/// David measure (only key.charlie and key.david are used), traces out Bob's
/// pair and renormalizes.
InsideAttackReport inside_attack(const TargetState& target, const protocol::OutcomeKey& key,
                                 const AttackParams& params);

/// Alice's marginal in the same branch without any attack.
Matrix unattacked_alice_marginal(const TargetState& target, const protocol::OutcomeKey& key);

enum class OutsideStrategy { InterceptResend, MeasureResend };

std::string_view strategy_name(OutsideStrategy s);
/// Accepts "intercept-resend" and "measure-resend"; strategies that are named
/// but not modelled raise UnsupportedConfigurationError.
OutsideStrategy parse_strategy(std::string_view name);
std::vector<std::string> unsupported_strategies();

struct DetectionEstimate {
  double probability;
  double std_error;
  std::size_t trials;
};

/// Monte-Carlo estimate of the chance that at least one of n_decoys decoys
/// drawn from {|0>, |1>, |+>, |->} reveals the eavesdropper.
DetectionEstimate outside_attack_sim(int n_decoys, OutsideStrategy strategy, std::size_t trials,
                                     std::uint64_t seed);

/// 1 - (3/4)^n for both modelled strategies.
double decoy_detection_probability(int n_decoys, OutsideStrategy strategy);

}  // namespace rsp::analysis
