#include "rsp/security.hpp"

#include <cmath>

#include "rsp/analysis.hpp"
#include "rsp/channel.hpp"

namespace rsp::analysis {
namespace {

// Unnormalized A B1 B2 state left after Charlie and David read (C, D):
// (1/4) sum_k |Upsilon_k> (x) Bob's block of zeta_k.
Ket branch_abb(const TargetState& target, const protocol::OutcomeKey& key) {
  if (!protocol::is_correlated(key.charlie, key.david)) {
    throw UnknownOutcomeError("Charlie/David outcome " + key.label() + " never occurs");
  }
  const protocol::AliceBasis basis = protocol::alice_basis(target);
  Ket out = Ket::Zero(8);
  for (int which : {1, 2}) {
    const Ket& up = which == 1 ? basis.upsilon1 : basis.upsilon2;
    for (const auto& block : channel::zeta_blocks(which, target)) {
      if (block.charlie == key.charlie && block.david == key.david) out += 0.25 * kron(up, block.bob);
    }
  }
  return out;
}

// Marginals of rho_AE built from the branch state, qubit A first.
Matrix attacked_ae(const Ket& branch, const Matrix& v) {
  const Eigen::Index d2 = v.rows();
  Matrix rho = Matrix::Zero(d2, d2);
  for (Eigen::Index bb = 0; bb < 4; ++bb) {
    Ket alice(2);
    alice << branch(bb), branch(4 + bb);
    const Ket x = v * alice;
    rho += x * x.adjoint();
  }
  return rho;
}

Matrix environment_marginal(const Matrix& rho_ae) {
  const Eigen::Index d = rho_ae.rows() / 2;
  return rho_ae.topLeftCorner(d, d) + rho_ae.bottomRightCorner(d, d);
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((diff + diff.adjoint()) / 2.0,
                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double sq(double x) { return x * x; }

}  // namespace

AttackParams AttackParams::trivial(int env_dim) {
  if (env_dim < 2) throw ArgumentError("environment dimension must be at least 2");
  AttackParams p;
  p.env_dim = env_dim;
  p.eps00 = Ket::Zero(env_dim);
  p.eps00(0) = 1;
  p.eps11 = p.eps00;
  p.eps01 = Ket::Zero(env_dim);
  p.eps10 = Ket::Zero(env_dim);
  return p;
}

AttackParams AttackParams::random(int env_dim, std::mt19937_64& rng) {
  if (env_dim < 2) throw ArgumentError("environment dimension must be at least 2");
  std::normal_distribution<double> normal;
  Matrix g(2 * env_dim, 2);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(2 * env_dim, 2);
  AttackParams p;
  p.env_dim = env_dim;
  p.eps00 = q.col(0).head(env_dim);
  p.eps01 = q.col(0).tail(env_dim);
  p.eps10 = q.col(1).head(env_dim);
  p.eps11 = q.col(1).tail(env_dim);
  return p;
}

void AttackParams::validate(double tol) const {
  if (env_dim < 2) throw ArgumentError("environment dimension must be at least 2");
  for (const Ket* e : {&eps00, &eps01, &eps10, &eps11}) {
    if (e->size() != env_dim) throw ArgumentError("environment fragment has the wrong dimension");
  }
  if (std::abs(eps00.squaredNorm() + eps01.squaredNorm() - 1.0) > tol) {
    throw ArgumentError("constraint violated: <e00|e00> + <e01|e01> = 1");
  }
  if (std::abs(eps10.squaredNorm() + eps11.squaredNorm() - 1.0) > tol) {
    throw ArgumentError("constraint violated: <e10|e10> + <e11|e11> = 1");
  }
  if (std::abs(eps00.dot(eps10) + eps01.dot(eps11)) > tol) {
    throw ArgumentError("constraint violated: <e00|e10> + <e01|e11> = 0 (isometry)");
  }
}

Matrix AttackParams::isometry() const {
  Matrix v(2 * env_dim, 2);
  v.col(0) << eps00, eps01;
  v.col(1) << eps10, eps11;
  return v;
}

double AttackParams::isometry_residual() const {
  const Matrix v = isometry();
  return (v.adjoint() * v - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
}

bool PurityChain::holds(double purity, double tol) const {
  if (purity > bound[0] + tol) return false;
  for (int i = 0; i + 1 < 4; ++i) {
    if (bound[i] > bound[i + 1] + tol) return false;
  }
  return true;
}

PurityChain purity_chain(const AttackParams& p) {
  const double c2 = 0.25;
  const cplx o0 = p.eps00.dot(p.eps10);
  const cplx o1 = p.eps01.dot(p.eps11);
  const double n00 = p.eps00.squaredNorm(), n01 = p.eps01.squaredNorm();
  const double n10 = p.eps10.squaredNorm(), n11 = p.eps11.squaredNorm();
  PurityChain chain{};
  chain.bound[0] = 2 * c2 * (1 + std::norm(o0 + o1));
  chain.bound[1] = 2 * c2 * (1 + sq(std::abs(o0) + std::abs(o1)));
  chain.bound[2] = 2 * c2 * (1 + sq(std::sqrt(n00 * n10) + std::sqrt(n01 * n11)));
  chain.bound[3] = 2 * c2 * (1 + sq((n00 + n10) / 2 + (n01 + n11) / 2));
  return chain;
}

Matrix unattacked_alice_marginal(const TargetState& target, const protocol::OutcomeKey& key) {
  const Ket branch = branch_abb(target, key);
  const Matrix rho = outer(branch);
  return partial_trace(rho, {2, 3}) / branch.squaredNorm();
}

InsideAttackReport inside_attack(const TargetState& target, const protocol::OutcomeKey& key,
                                 const AttackParams& params) {
  params.validate();
  const Matrix v = params.isometry();
  const Ket branch = branch_abb(target, key);
  const double weight = branch.squaredNorm();

  InsideAttackReport r;
  r.rho_ae = attacked_ae(branch, v) / weight;
  r.raw_weight = weight;
  r.purity = purity(r.rho_ae);
  const Matrix env = environment_marginal(r.rho_ae);
  r.env_purity = purity(env);
  r.isometry_residual = params.isometry_residual();

  const double s = 1.0 / std::sqrt(2.0);
  r.target_dependence = 0.0;
  for (const TargetState& probe : {TargetState(1.0, 0.0), TargetState(0.0, 1.0),
                                   TargetState(s, s), TargetState(0.6, -0.8)}) {
    const Ket other = branch_abb(probe, key);
    const Matrix other_env = environment_marginal(attacked_ae(other, v) / other.squaredNorm());
    r.target_dependence = std::max(r.target_dependence, trace_distance(env, other_env));
  }
  r.chain = purity_chain(params);
  return r;
}

std::string_view strategy_name(OutsideStrategy s) {
  return s == OutsideStrategy::InterceptResend ? "intercept-resend" : "measure-resend";
}

std::vector<std::string> unsupported_strategies() {
  return {"denial-of-service", "entanglement-measure"};
}

OutsideStrategy parse_strategy(std::string_view name) {
  if (name == "intercept-resend") return OutsideStrategy::InterceptResend;
  if (name == "measure-resend") return OutsideStrategy::MeasureResend;
  for (const std::string& u : unsupported_strategies()) {
    if (u == name) {
      throw UnsupportedConfigurationError("attack strategy '" + u + "' is not modelled");
    }
  }
  throw ArgumentError("unknown attack strategy '" + std::string(name) + "'");
}

double decoy_detection_probability(int n_decoys, OutsideStrategy) {
  if (n_decoys < 1) throw ArgumentError("at least one decoy is required");
  return 1.0 - std::pow(0.75, n_decoys);
}

DetectionEstimate outside_attack_sim(int n_decoys, OutsideStrategy strategy, std::size_t trials,
                                     std::uint64_t seed) {
  if (n_decoys < 1) throw ArgumentError("at least one decoy is required");
  if (trials == 0) throw ArgumentError("at least one trial is required");
  using Qubit = Eigen::Vector2cd;
  const double s = 1.0 / std::sqrt(2.0);
  // basis 0: |0>, |1>; basis 1: |+>, |->
  const std::array<std::array<Qubit, 2>, 2> bases{{{Qubit(1, 0), Qubit(0, 1)},
                                                   {Qubit(s, s), Qubit(s, -s)}}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::size_t detected = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    bool caught = false;
    for (int k = 0; k < n_decoys; ++k) {
      const int decoy_basis = coin(rng);
      const int decoy_bit = coin(rng);
      const Qubit& sent = bases[decoy_basis][decoy_bit];
      const int eve_basis = strategy == OutsideStrategy::InterceptResend ? coin(rng) : 0;
      const double p0 = std::norm(bases[eve_basis][0].dot(sent));
      const Qubit& resent = bases[eve_basis][unit(rng) < p0 ? 0 : 1];
      const double p_same = std::norm(sent.dot(resent));
      if (unit(rng) >= p_same) caught = true;
    }
    if (caught) ++detected;
  }
  const double p = double(detected) / double(trials);
  return {p, std::sqrt(p * (1.0 - p) / double(trials)), trials};
}

}  // namespace rsp::analysis
