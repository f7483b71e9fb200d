#pragma once

// Single-qubit Kraus noise and its effect on the protocol's output state.

#include <array>
#include <optional>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/protocol.hpp"
#include "rsp/tensor.hpp"

namespace rsp::noise {

enum class NoiseKind { BitFlip, PhaseFlip, BitPhaseFlip, AmplitudeDamping, PhaseDamping, Depolarizing };

inline constexpr std::array<NoiseKind, 6> kAllKinds{
    NoiseKind::BitFlip,          NoiseKind::PhaseFlip,    NoiseKind::BitPhaseFlip,
    NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping, NoiseKind::Depolarizing};

/// "bit-flip", "phase-flip", "bit-phase-flip", "amplitude-damping",
/// "phase-damping", "depolarizing".
std::string_view kind_name(NoiseKind kind);
NoiseKind parse_kind(std::string_view name);

/// Kraus set for one qubit. Throws ArgumentError unless 0 <= eta <= 1.
std::vector<Matrix> kraus_operators(NoiseKind kind, double eta);

/// max |sum E^dagger E - I| entry.
double completeness_residual(const std::vector<Matrix>& ops);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::BitFlip;
  double eta = 0.0;
  std::vector<int> qubits;

  /// Common eta on all seven channel qubits.
  static NoiseSpec all_seven(NoiseKind kind, double eta);
  /// Common eta on the six distributed qubits 2..7.
  static NoiseSpec transmitted(NoiseKind kind, double eta);

  void validate() const;
  bool covers_all_seven() const;
};

/// Applies the single-qubit channel independently to each listed qubit.
Matrix apply_noise(const Matrix& rho, const NoiseSpec& spec);

/// |Psi><Psi| of the channel after exact noise.
Matrix noisy_channel_state(const NoiseSpec& spec);

/// Uniform-index truncation sum_j E_j^(x7) rho_Psi E_j^(x7)^dagger and its
/// trace. Throws UnsupportedConfigurationError unless the spec covers all
/// seven qubits.
struct TruncatedState {
  Matrix rho;  // unnormalized
  double trace;
};
TruncatedState truncated_channel_state(const NoiseSpec& spec);

/// E_j^(x7)|Psi> for the j-th Kraus operator (unnormalized).
Ket uniform_index_ket(NoiseKind kind, double eta, std::size_t j);

enum class Model { Exact, Truncated };

std::string_view model_name(Model m);

/// Maps a seven-qubit register onto Bob's pair for one outcome key: contracts
/// A with <Upsilon| and fixes the Charlie/David bits. A 4 x 128 matrix.
Matrix branch_operator(const protocol::OutcomeKey& key, const protocol::AliceBasis& basis);

struct NoisyBranch {
  Matrix rho;          // Bob's pair after recovery, trace one
  double probability;  // branch probability in the noisy (renormalized) state
};

/// Bob's output for one branch given a seven-qubit density matrix of trace 1.
/// Throws ImpossibleBranchError when the branch probability is below 1e-14.
NoisyBranch branch_output(const Matrix& channel_rho, const TargetState& target,
                          const protocol::OutcomeKey& key);

/// Noise on the channel, then measurement, recovery and partial trace.
NoisyBranch noisy_rsp_output(const TargetState& target, const protocol::OutcomeKey& key,
                             const NoiseSpec& spec, Model model);

/// Seven-qubit density matrix the given model hands to the protocol (trace 1).
Matrix model_channel_state(const NoiseSpec& spec, Model model);

struct TrajectoryEstimate {
  double fidelity;
  double std_error;
  std::size_t samples;
};

/// Monte-Carlo unraveling: per qubit a Kraus index is drawn with Born weights,
/// then the pure-state pipeline is evaluated. With a key the estimate targets
/// that branch's conditional fidelity; without one it targets the average
/// over the sixteen supported keys. Ratio estimator with a delta-method error.
TrajectoryEstimate trajectory_estimate(const TargetState& target,
                                       const std::optional<protocol::OutcomeKey>& key,
                                       const NoiseSpec& spec, std::size_t n_samples,
                                       std::uint64_t seed);

}  // namespace rsp::noise
