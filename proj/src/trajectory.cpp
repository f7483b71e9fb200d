#include <cmath>
#include <random>

#include "rsp/channel.hpp"
#include "rsp/noise.hpp"

namespace rsp::noise {
namespace {

constexpr std::size_t kBatch = 4096;

// In-place 2x2 action on one qubit of a seven-qubit ket.
void apply_local(const Matrix& e, int qubit, const Ket& in, Ket& out) {
  const Eigen::Index stride = Eigen::Index{1} << (channel::kChannelQubits - qubit);
  for (Eigen::Index base = 0; base < in.size(); ++base) {
    if (base & stride) continue;
    const cplx a = in(base), b = in(base | stride);
    out(base) = e(0, 0) * a + e(0, 1) * b;
    out(base | stride) = e(1, 0) * a + e(1, 1) * b;
  }
}

}  // namespace

TrajectoryEstimate trajectory_estimate(const TargetState& target,
                                       const std::optional<protocol::OutcomeKey>& key,
                                       const NoiseSpec& spec, std::size_t n_samples,
                                       std::uint64_t seed) {
  spec.validate();
  if (n_samples == 0) throw ArgumentError("trajectory estimate needs at least one sample");

  std::vector<protocol::OutcomeKey> keys;
  if (key) {
    protocol::recovery_sequence(*key);
    keys.push_back(*key);
  } else {
    const auto all = protocol::all_outcome_keys();
    keys.assign(all.begin(), all.end());
  }
  // Rows 4k..4k+3 map the register onto Bob's recovered pair for keys[k].
  const protocol::AliceBasis basis = protocol::alice_basis(target);
  Matrix stacked(4 * static_cast<Eigen::Index>(keys.size()), 128);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const Matrix u = protocol::sequence_unitary(protocol::recovery_sequence(keys[k]).gates);
    stacked.middleRows(4 * static_cast<Eigen::Index>(k), 4) = u * branch_operator(keys[k], basis);
  }
  const Ket xi = target.xi();
  const auto ops = kraus_operators(spec.kind, spec.eta);
  const Ket psi0 = channel::build_channel();

  std::vector<double> num(n_samples), den(n_samples);
  std::vector<Ket> branches(ops.size(), Ket(128));
  std::vector<double> weights(ops.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t start = 0, batch = 0; start < n_samples; start += kBatch, ++batch) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(batch)};
    std::mt19937_64 rng(seq);
    const std::size_t stop = std::min(n_samples, start + kBatch);
    for (std::size_t t = start; t < stop; ++t) {
      Ket psi = psi0;
      for (int q : spec.qubits) {
        for (std::size_t j = 0; j < ops.size(); ++j) {
          apply_local(ops[j], q, psi, branches[j]);
          weights[j] = branches[j].squaredNorm();
        }
        double u = unit(rng);
        std::size_t pick = ops.size() - 1;
        for (std::size_t j = 0; j < ops.size(); ++j) {
          if (u < weights[j]) {
            pick = j;
            break;
          }
          u -= weights[j];
        }
        while (weights[pick] <= 0.0 && pick > 0) --pick;
        psi = branches[pick] / std::sqrt(weights[pick]);
      }
      const Ket y = stacked * psi;
      double a = 0.0, b = 0.0;
      for (std::size_t k = 0; k < keys.size(); ++k) {
        const auto bob = y.segment(4 * static_cast<Eigen::Index>(k), 4);
        a += std::norm(xi.dot(bob));
        b += bob.squaredNorm();
      }
      num[t] = a;
      den[t] = b;
    }
  }

  double sum_a = 0.0, sum_b = 0.0;
  for (std::size_t t = 0; t < n_samples; ++t) {
    sum_a += num[t];
    sum_b += den[t];
  }
  if (sum_b < protocol::kImpossibleBranch) {
    throw ImpossibleBranchError("no sampled trajectory reached the requested branch", sum_b);
  }
  const double ratio = sum_a / sum_b;
  const double n = static_cast<double>(n_samples);
  double resid = 0.0;
  for (std::size_t t = 0; t < n_samples; ++t) {
    const double r = num[t] - ratio * den[t];
    resid += r * r;
  }
  const double mean_b = sum_b / n;
  const double se = n_samples > 1 ? std::sqrt(resid / (n * (n - 1.0))) / mean_b : 0.0;
  return {ratio, se, n_samples};
}

}  // namespace rsp::noise
