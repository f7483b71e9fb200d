#include "rsp/protocol.hpp"

#include <cstdio>
#include <sstream>

#include "rsp/channel.hpp"
#include "rsp/gates.hpp"
#include "rsp/recovery_table.hpp"

namespace rsp::protocol {
namespace {

std::string two_bits(unsigned v) {
  return std::string{char('0' + ((v >> 1) & 1U)), char('0' + (v & 1U))};
}

unsigned parse_two_bits(std::string_view s) {
  if (s.size() != 2 || (s[0] != '0' && s[0] != '1') || (s[1] != '0' && s[1] != '1')) {
    throw ArgumentError("expected a two-bit string, got '" + std::string(s) + "'");
  }
  return unsigned(s[0] - '0') << 1 | unsigned(s[1] - '0');
}

void require_orthonormal(std::span<const Ket> basis, Eigen::Index dim) {
  if (basis.empty() || static_cast<Eigen::Index>(basis.size()) > dim) {
    throw ArgumentError("measurement basis size does not fit the measured subspace");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != dim) throw ArgumentError("basis vector has the wrong dimension");
    for (std::size_t j = i; j < basis.size(); ++j) {
      const cplx g = basis[i].dot(basis[j]);
      const cplx expected = i == j ? 1.0 : 0.0;
      if (std::abs(g - expected) > 1e-10) throw ArgumentError("measurement basis is not orthonormal");
    }
  }
}

Ket project(const Ket& state, std::span<const int> qubits, const Ket& e) {
  return apply_to_qubits(Matrix(outer(e)), qubits, state);
}

ProtocolTranscript finish(const TargetState& target, const OutcomeKey& key, double probability,
                          const Ket& collapsed, const AliceBasis& basis) {
  const RecoveryRule& rule = recovery_sequence(key);
  const Ket final_state =
      apply_to_qubits(sequence_unitary(rule.gates), channel::kBobQubits, collapsed);
  Matrix bob_density = partial_trace(Matrix(outer(final_state)), channel::kNonBobQubits);
  const Ket xi = target.xi();
  const double fid = xi.dot(bob_density * xi).real();
  return {target,
          key,
          probability,
          rule.gates,
          branch_bob_ket(final_state, key, basis),
          std::move(bob_density),
          fid};
}

constexpr std::array<int, 1> kAliceQubit{1};
constexpr std::array<int, 4> kCharlieDavidQubits{4, 6, 5, 7};

}  // namespace

std::string OutcomeKey::label() const {
  return std::string(alice == AliceOutcome::Upsilon1 ? "U1" : "U2") + "," + two_bits(charlie) +
         "," + two_bits(david);
}

OutcomeKey OutcomeKey::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::stringstream in{std::string(text)};
  for (std::string p; std::getline(in, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw ArgumentError("outcome key must look like U1,00,00");
  OutcomeKey key;
  if (parts[0] == "U1" || parts[0] == "1") {
    key.alice = AliceOutcome::Upsilon1;
  } else if (parts[0] == "U2" || parts[0] == "2") {
    key.alice = AliceOutcome::Upsilon2;
  } else {
    throw ArgumentError("Alice outcome must be U1 or U2");
  }
  key.charlie = parse_two_bits(parts[1]);
  key.david = parse_two_bits(parts[2]);
  return key;
}

bool is_correlated(unsigned charlie, unsigned david) {
  // The channel ties D2 to C2; C1 and D1 are free.
  return charlie < 4 && david < 4 && (charlie & 1U) == (david & 1U);
}

std::array<OutcomeKey, 16> all_outcome_keys() {
  static constexpr std::array<std::pair<unsigned, unsigned>, 8> order{{
      {0b00, 0b00}, {0b01, 0b01}, {0b10, 0b00}, {0b11, 0b01},
      {0b00, 0b10}, {0b10, 0b10}, {0b01, 0b11}, {0b11, 0b11},
  }};
  std::array<OutcomeKey, 16> keys;
  for (std::size_t i = 0; i < 16; ++i) {
    keys[i] = {i < 8 ? AliceOutcome::Upsilon1 : AliceOutcome::Upsilon2, order[i % 8].first,
               order[i % 8].second};
  }
  return keys;
}

AliceBasis alice_basis(const TargetState& target) {
  const cplx a = target.alpha();
  const cplx b = target.beta();
  Ket u1(2), u2(2);
  u1 << a, b;
  u2 << -std::conj(b), std::conj(a);
  return {u1, u2};
}

std::vector<Ket> computational_basis(int m) {
  std::vector<Ket> basis;
  for (Eigen::Index i = 0; i < (Eigen::Index{1} << m); ++i) basis.push_back(basis_ket(m, i));
  return basis;
}

Measurement measure_projective(const Ket& state, std::span<const int> qubits,
                               std::span<const Ket> basis, std::size_t forced) {
  require_orthonormal(basis, Eigen::Index{1} << qubits.size());
  if (forced >= basis.size()) throw ArgumentError("forced outcome index out of range");
  Ket projected = project(state, qubits, basis[forced]);
  const double p = projected.squaredNorm();
  if (p < kImpossibleBranch) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "forced measurement outcome %zu has probability %.3g", forced, p);
    throw ImpossibleBranchError(buf, p);
  }
  return {forced, p, projected / std::sqrt(p)};
}

Measurement measure_projective(const Ket& state, std::span<const int> qubits,
                               std::span<const Ket> basis, std::mt19937_64& rng) {
  const Eigen::Index dim = Eigen::Index{1} << qubits.size();
  require_orthonormal(basis, dim);
  if (static_cast<Eigen::Index>(basis.size()) != dim) {
    throw ArgumentError("sampling requires a complete measurement basis");
  }
  std::vector<Ket> projected;
  std::vector<double> probs;
  for (const Ket& e : basis) {
    projected.push_back(project(state, qubits, e));
    probs.push_back(projected.back().squaredNorm());
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  std::size_t pick = probs.size() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (u < probs[i]) {
      pick = i;
      break;
    }
    u -= probs[i];
  }
  // Guard against rounding landing on a zero-probability tail entry.
  while (probs[pick] < kImpossibleBranch && pick > 0) --pick;
  return {pick, probs[pick], projected[pick] / std::sqrt(probs[pick])};
}

std::string_view gate_name(Gate g) {
  static constexpr std::array<std::string_view, 8> names{"CX12", "CX21", "H1", "H2",
                                                         "X1",   "X2",   "Z1", "Z2"};
  return names[static_cast<std::size_t>(g)];
}

Gate parse_gate(std::string_view name) {
  for (Gate g : kAllGates) {
    if (gate_name(g) == name) return g;
  }
  throw ArgumentError("unknown gate '" + std::string(name) + "'");
}

std::vector<Gate> parse_gates(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Gate> out;
  for (std::string tok; in >> tok;) out.push_back(parse_gate(tok));
  return out;
}

std::string format_gates(std::span<const Gate> gates) {
  std::string out;
  for (Gate g : gates) {
    if (!out.empty()) out += ' ';
    out += gate_name(g);
  }
  return out;
}

Matrix gate_matrix(Gate g) {
  const Matrix id = gates::identity();
  switch (g) {
    case Gate::CX12:
      return gates::cnot();
    case Gate::CX21: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1;
      m(2, 2) = 1;
      m(1, 3) = 1;
      m(3, 1) = 1;
      return m;
    }
    case Gate::H1: return kron(gates::hadamard(), id);
    case Gate::H2: return kron(id, gates::hadamard());
    case Gate::X1: return kron(gates::pauli_x(), id);
    case Gate::X2: return kron(id, gates::pauli_x());
    case Gate::Z1: return kron(gates::pauli_z(), id);
    case Gate::Z2: return kron(id, gates::pauli_z());
  }
  throw ArgumentError("unknown gate");
}

Matrix sequence_unitary(std::span<const Gate> gates) {
  Matrix u = Matrix::Identity(4, 4);
  for (Gate g : gates) u = gate_matrix(g) * u;
  return u;
}

const RecoveryRule& recovery_sequence(const OutcomeKey& key) {
  for (const RecoveryRule& rule : recovery_table().rules) {
    if (rule.key == key) return rule;
  }
  throw UnknownOutcomeError("no recovery rule for outcome " + key.label());
}

Ket branch_bob_ket(const Ket& channel_state, const OutcomeKey& key, const AliceBasis& basis) {
  if (channel_state.size() != 128) throw ArgumentError("expected a seven-qubit state");
  const Ket& up = key.alice == AliceOutcome::Upsilon1 ? basis.upsilon1 : basis.upsilon2;
  const Eigen::Index c1 = (key.charlie >> 1) & 1U, c2 = key.charlie & 1U;
  const Eigen::Index d1 = (key.david >> 1) & 1U, d2 = key.david & 1U;
  Ket bob = Ket::Zero(4);
  for (Eigen::Index b = 0; b < 4; ++b) {
    for (Eigen::Index a = 0; a < 2; ++a) {
      const Eigen::Index index = a << 6 | b << 4 | c1 << 3 | d1 << 2 | c2 << 1 | d2;
      bob(b) += std::conj(up(a)) * channel_state(index);
    }
  }
  return bob;
}

ProtocolTranscript run_rsp(const TargetState& target, const OutcomeKey& forced) {
  const AliceBasis basis = alice_basis(target);
  const std::array<Ket, 2> alice{basis.upsilon1, basis.upsilon2};
  const Measurement ma =
      measure_projective(channel::build_channel(), kAliceQubit, alice, std::size_t(forced.alice));
  const auto cd_basis = computational_basis(4);
  const Measurement mcd = measure_projective(ma.collapsed, kCharlieDavidQubits, cd_basis,
                                             forced.charlie << 2 | forced.david);
  return finish(target, forced, ma.probability * mcd.probability, mcd.collapsed, basis);
}

ProtocolTranscript run_rsp(const TargetState& target, std::mt19937_64& rng) {
  const AliceBasis basis = alice_basis(target);
  const std::array<Ket, 2> alice{basis.upsilon1, basis.upsilon2};
  const Measurement ma = measure_projective(channel::build_channel(), kAliceQubit, alice, rng);
  const auto cd_basis = computational_basis(4);
  const Measurement mcd = measure_projective(ma.collapsed, kCharlieDavidQubits, cd_basis, rng);
  const OutcomeKey key{ma.outcome == 0 ? AliceOutcome::Upsilon1 : AliceOutcome::Upsilon2,
                       unsigned(mcd.outcome >> 2), unsigned(mcd.outcome & 3U)};
  return finish(target, key, ma.probability * mcd.probability, mcd.collapsed, basis);
}

ProtocolTranscript run_rsp(const TargetState& target, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run_rsp(target, rng);
}

std::vector<ProtocolTranscript> enumerate_branches(const TargetState& target) {
  std::vector<ProtocolTranscript> out;
  for (const OutcomeKey& key : all_outcome_keys()) out.push_back(run_rsp(target, key));
  return out;
}

}  // namespace rsp::protocol
