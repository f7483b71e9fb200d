#pragma once

// Fidelity and purity metrics and fidelity-vs-eta sweeps.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsp/noise.hpp"
#include "rsp/protocol.hpp"

namespace rsp::analysis {

/// <psi|rho|psi>. Throws ArgumentError on a dimension mismatch.
double fidelity(const Ket& pure, const Matrix& rho);

/// tr(rho^2).
double purity(const Matrix& rho);

struct BranchAverage {
  double fidelity;               // sum p_k F_k / sum p_k over the supported keys
  double supported_probability;  // sum p_k; below 1 once noise populates other outcomes
  std::size_t skipped;           // keys with zero probability
};

/// Averages Bob's fidelity over the sixteen supported keys of a seven-qubit
/// density matrix, weighting by branch probability.
BranchAverage branch_averaged_fidelity(const Matrix& channel_rho, const TargetState& target);

BranchAverage branch_averaged_fidelity(const TargetState& target, const noise::NoiseSpec& spec,
                                       noise::Model model);

enum class ModelChoice { Exact, Truncated, Both };
enum class QubitScope { AllSeven, Transmitted };

struct SweepConfig {
  std::vector<noise::NoiseKind> kinds{noise::kAllKinds.begin(), noise::kAllKinds.end()};
  double eta_start = 0.0;
  double eta_end = 1.0;
  int steps = 11;
  TargetState target = TargetState::normalized(1.0, 1.0);
  ModelChoice model = ModelChoice::Both;
  std::optional<protocol::OutcomeKey> branch;  // empty: average over keys
  QubitScope scope = QubitScope::AllSeven;

  void validate() const;
  std::vector<double> eta_grid() const;
};

/// A fidelity or a marker such as "error:impossible-branch", "unsupported"
/// or "skipped".
using Cell = std::variant<double, std::string>;

struct SweepRow {
  noise::NoiseKind kind;
  double eta;
  cplx alpha;
  cplx beta;
  std::string branch;  // "averaged" or a key label
  Cell exact;
  Cell truncated;
};

/// One row per (kind, eta), sorted by noise name and then eta.
std::vector<SweepRow> fidelity_sweep(const SweepConfig& config);

std::string branch_label(const std::optional<protocol::OutcomeKey>& branch);

}  // namespace rsp::analysis
