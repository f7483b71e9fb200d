#include "rsp/noise.hpp"

#include <algorithm>
#include <cmath>

#include "rsp/channel.hpp"
#include "rsp/gates.hpp"

namespace rsp::noise {
namespace {

constexpr std::array<std::string_view, 6> kKindNames{
    "bit-flip", "phase-flip", "bit-phase-flip", "amplitude-damping", "phase-damping", "depolarizing"};

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ArgumentError("noise parameter eta must lie in [0, 1], got " + std::to_string(eta));
  }
}

Matrix from_entries(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

std::string_view kind_name(NoiseKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

NoiseKind parse_kind(std::string_view name) {
  for (NoiseKind k : kAllKinds) {
    if (kind_name(k) == name) return k;
  }
  throw ArgumentError("unknown noise kind '" + std::string(name) + "'");
}

std::vector<Matrix> kraus_operators(NoiseKind kind, double eta) {
  check_eta(eta);
  const double keep = std::sqrt(1.0 - eta);
  const double hit = std::sqrt(eta);
  const Matrix id = gates::identity();
  switch (kind) {
    case NoiseKind::BitFlip: return {keep * id, hit * gates::pauli_x()};
    case NoiseKind::PhaseFlip: return {keep * id, hit * gates::pauli_z()};
    case NoiseKind::BitPhaseFlip: return {keep * id, hit * gates::pauli_y()};
    case NoiseKind::AmplitudeDamping:
      return {from_entries(1, 0, 0, keep), from_entries(0, hit, 0, 0)};
    case NoiseKind::PhaseDamping:
      return {keep * id, from_entries(hit, 0, 0, 0), from_entries(0, 0, 0, hit)};
    case NoiseKind::Depolarizing: {
      const double w = std::sqrt(eta / 3.0);
      return {keep * id, w * gates::pauli_x(), w * gates::pauli_y(), w * gates::pauli_z()};
    }
  }
  throw ArgumentError("unknown noise kind");
}

double completeness_residual(const std::vector<Matrix>& ops) {
  Matrix sum = Matrix::Zero(2, 2);
  for (const Matrix& e : ops) sum += e.adjoint() * e;
  return (sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
}

NoiseSpec NoiseSpec::all_seven(NoiseKind kind, double eta) {
  return {kind, eta, {1, 2, 3, 4, 5, 6, 7}};
}

NoiseSpec NoiseSpec::transmitted(NoiseKind kind, double eta) {
  return {kind, eta, {2, 3, 4, 5, 6, 7}};
}

void NoiseSpec::validate() const {
  check_eta(eta);
  if (qubits.empty()) throw ArgumentError("noise must act on at least one qubit");
  detail::validated_targets(qubits, channel::kChannelQubits);
}

bool NoiseSpec::covers_all_seven() const {
  std::vector<int> q = qubits;
  std::sort(q.begin(), q.end());
  return q == std::vector<int>{1, 2, 3, 4, 5, 6, 7};
}

Matrix apply_noise(const Matrix& rho, const NoiseSpec& spec) {
  check_eta(spec.eta);
  const auto ops = kraus_operators(spec.kind, spec.eta);
  detail::validated_targets(spec.qubits, qubit_count(rho.rows()));
  Matrix out = rho;
  for (int q : spec.qubits) {
    const std::array<int, 1> target{q};
    Matrix next = Matrix::Zero(out.rows(), out.cols());
    for (const Matrix& e : ops) next += apply_to_qubits(e, target, out);
    out = std::move(next);
  }
  return out;
}

Matrix noisy_channel_state(const NoiseSpec& spec) {
  spec.validate();
  return apply_noise(Matrix(outer(channel::build_channel())), spec);
}

Ket uniform_index_ket(NoiseKind kind, double eta, std::size_t j) {
  const auto ops = kraus_operators(kind, eta);
  if (j >= ops.size()) throw ArgumentError("Kraus index out of range");
  Ket v = channel::build_channel();
  for (int q = 1; q <= channel::kChannelQubits; ++q) {
    const std::array<int, 1> target{q};
    v = apply_to_qubits(ops[j], target, v);
  }
  return v;
}

TruncatedState truncated_channel_state(const NoiseSpec& spec) {
  spec.validate();
  if (!spec.covers_all_seven()) {
    throw UnsupportedConfigurationError(
        "the truncated model is defined only for noise on all seven qubits");
  }
  const std::size_t count = kraus_operators(spec.kind, spec.eta).size();
  Matrix rho = Matrix::Zero(128, 128);
  for (std::size_t j = 0; j < count; ++j) {
    const Ket v = uniform_index_ket(spec.kind, spec.eta, j);
    rho += v * v.adjoint();
  }
  const double trace = rho.trace().real();
  return {std::move(rho), trace};
}

std::string_view model_name(Model m) { return m == Model::Exact ? "exact" : "truncated"; }

Matrix branch_operator(const protocol::OutcomeKey& key, const protocol::AliceBasis& basis) {
  const Ket& up = key.alice == protocol::AliceOutcome::Upsilon1 ? basis.upsilon1 : basis.upsilon2;
  const Eigen::Index c1 = (key.charlie >> 1) & 1U, c2 = key.charlie & 1U;
  const Eigen::Index d1 = (key.david >> 1) & 1U, d2 = key.david & 1U;
  Matrix k = Matrix::Zero(4, 128);
  for (Eigen::Index b = 0; b < 4; ++b) {
    for (Eigen::Index a = 0; a < 2; ++a) {
      k(b, a << 6 | b << 4 | c1 << 3 | d1 << 2 | c2 << 1 | d2) = std::conj(up(a));
    }
  }
  return k;
}

NoisyBranch branch_output(const Matrix& channel_rho, const TargetState& target,
                          const protocol::OutcomeKey& key) {
  if (channel_rho.rows() != 128 || channel_rho.cols() != 128) {
    throw ArgumentError("expected a seven-qubit density matrix");
  }
  const protocol::RecoveryRule& rule = protocol::recovery_sequence(key);
  const Matrix k = branch_operator(key, protocol::alice_basis(target));
  const Matrix bob = k * channel_rho * k.adjoint();
  const double p = bob.trace().real();
  if (p < protocol::kImpossibleBranch) {
    throw ImpossibleBranchError("branch " + key.label() + " has probability " + std::to_string(p),
                                p);
  }
  const Matrix u = protocol::sequence_unitary(rule.gates);
  return {u * (bob / p) * u.adjoint(), p};
}

Matrix model_channel_state(const NoiseSpec& spec, Model model) {
  if (model == Model::Exact) return noisy_channel_state(spec);
  TruncatedState t = truncated_channel_state(spec);
  return t.rho / t.trace;
}

NoisyBranch noisy_rsp_output(const TargetState& target, const protocol::OutcomeKey& key,
                             const NoiseSpec& spec, Model model) {
  protocol::recovery_sequence(key);
  return branch_output(model_channel_state(spec, model), target, key);
}

}  // namespace rsp::noise
