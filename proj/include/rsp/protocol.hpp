#pragma once

// Noiseless remote state preparation over the seven-qubit channel.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/target.hpp"
#include "rsp/tensor.hpp"

namespace rsp::protocol {

enum class AliceOutcome { Upsilon1 = 0, Upsilon2 = 1 };

/// Joint measurement result. `charlie` holds the C1C2 bits and `david` the
/// D1D2 bits, most significant bit first.
struct OutcomeKey {
  AliceOutcome alice = AliceOutcome::Upsilon1;
  unsigned charlie = 0;
  unsigned david = 0;

  friend bool operator==(const OutcomeKey&, const OutcomeKey&) = default;

  /// "U1,00,00" style label.
  std::string label() const;
  /// Inverse of label(); accepts "U1,01,01" or "1,01,01". Throws ArgumentError.
  static OutcomeKey parse(std::string_view text);
};

/// True for the eight (C1C2, D1D2) pairs the channel can produce.
bool is_correlated(unsigned charlie, unsigned david);

/// All sixteen keys, Upsilon1 rows first, in recovery-table order.
std::array<OutcomeKey, 16> all_outcome_keys();

struct AliceBasis {
  Ket upsilon1;  // alpha|0> + beta|1>
  Ket upsilon2;  // conj(alpha)|1> - conj(beta)|0>
};

AliceBasis alice_basis(const TargetState& target);

struct Measurement {
  std::size_t outcome;
  double probability;
  Ket collapsed;  // renormalized post-measurement state
};

inline constexpr double kImpossibleBranch = 1e-14;

/// Projects `qubits` onto basis[forced]. Throws ImpossibleBranchError when
/// that branch has probability below 1e-14.
Measurement measure_projective(const Ket& state, std::span<const int> qubits,
                               std::span<const Ket> basis, std::size_t forced);

/// Samples an outcome by the Born rule. The basis must be complete.
Measurement measure_projective(const Ket& state, std::span<const int> qubits,
                               std::span<const Ket> basis, std::mt19937_64& rng);

/// Computational basis of an m-qubit subsystem.
std::vector<Ket> computational_basis(int m);

/// Bob's gate alphabet; 1 and 2 refer to B1 and B2.
enum class Gate { CX12, CX21, H1, H2, X1, X2, Z1, Z2 };
inline constexpr std::array<Gate, 8> kAllGates{Gate::CX12, Gate::CX21, Gate::H1, Gate::H2,
                                               Gate::X1,   Gate::X2,   Gate::Z1, Gate::Z2};

std::string_view gate_name(Gate g);
Gate parse_gate(std::string_view name);
std::vector<Gate> parse_gates(std::string_view text);
std::string format_gates(std::span<const Gate> gates);
/// 4x4 matrix on (B1, B2).
Matrix gate_matrix(Gate g);
/// Product of a gate list applied left to right.
Matrix sequence_unitary(std::span<const Gate> gates);

struct RecoveryRule {
  OutcomeKey key;
  std::vector<Gate> gates;
};

/// Verified (or repaired) gate list for a key. Throws UnknownOutcomeError
/// for keys outside the sixteen supported rows.
const RecoveryRule& recovery_sequence(const OutcomeKey& key);

struct ProtocolTranscript {
  TargetState target;
  OutcomeKey outcome;
  double branch_probability;
  std::vector<Gate> gates;
  Ket bob_state;       // Bob's pair after recovery
  Matrix bob_density;  // partial trace over qubits 1,4,5,6,7
  double fidelity;     // <xi| bob_density |xi>
};

ProtocolTranscript run_rsp(const TargetState& target, const OutcomeKey& forced);
ProtocolTranscript run_rsp(const TargetState& target, std::uint64_t seed);
ProtocolTranscript run_rsp(const TargetState& target, std::mt19937_64& rng);

std::vector<ProtocolTranscript> enumerate_branches(const TargetState& target);

/// Bob's unnormalized pair state for a branch, read directly from a channel
/// state by contracting qubit A with <Upsilon_k| and fixing the Charlie and
/// David bits.
Ket branch_bob_ket(const Ket& channel_state, const OutcomeKey& key, const AliceBasis& basis);

}  // namespace rsp::protocol
