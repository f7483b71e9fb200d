#include "rsp/analysis.hpp"

#include <algorithm>

namespace rsp::analysis {
namespace {

Cell evaluate(const SweepConfig& config, const Matrix& channel_rho) {
  if (config.branch) {
    try {
      const noise::NoisyBranch out = noise::branch_output(channel_rho, config.target, *config.branch);
      return fidelity(config.target.xi(), out.rho);
    } catch (const ImpossibleBranchError&) {
      return std::string("error:impossible-branch");
    }
  }
  const BranchAverage avg = branch_averaged_fidelity(channel_rho, config.target);
  if (avg.supported_probability < protocol::kImpossibleBranch) {
    return std::string("error:impossible-branch");
  }
  return avg.fidelity;
}

}  // namespace

double fidelity(const Ket& pure, const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() != pure.size()) {
    throw ArgumentError("fidelity: state and density matrix dimensions differ");
  }
  return pure.dot(rho * pure).real();
}

double purity(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw ArgumentError("purity: matrix must be square");
  // tr(rho^2) = sum_ij rho_ij rho_ji
  return (rho.cwiseProduct(rho.transpose())).sum().real();
}

BranchAverage branch_averaged_fidelity(const Matrix& channel_rho, const TargetState& target) {
  BranchAverage out{0.0, 0.0, 0};
  const Ket xi = target.xi();
  double weighted = 0.0;
  for (const protocol::OutcomeKey& key : protocol::all_outcome_keys()) {
    try {
      const noise::NoisyBranch b = noise::branch_output(channel_rho, target, key);
      weighted += b.probability * fidelity(xi, b.rho);
      out.supported_probability += b.probability;
    } catch (const ImpossibleBranchError&) {
      ++out.skipped;
    }
  }
  if (out.supported_probability > 0.0) out.fidelity = weighted / out.supported_probability;
  return out;
}

BranchAverage branch_averaged_fidelity(const TargetState& target, const noise::NoiseSpec& spec,
                                       noise::Model model) {
  return branch_averaged_fidelity(noise::model_channel_state(spec, model), target);
}

void SweepConfig::validate() const {
  if (kinds.empty()) throw ArgumentError("sweep needs at least one noise kind");
  if (!(eta_start >= 0.0 && eta_start <= eta_end && eta_end <= 1.0)) {
    throw ArgumentError("sweep requires 0 <= eta start <= eta end <= 1");
  }
  if (steps < 2) throw ArgumentError("sweep requires at least two eta steps");
}

std::vector<double> SweepConfig::eta_grid() const {
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i) {
    grid.push_back(i == steps - 1 ? eta_end
                                  : eta_start + (eta_end - eta_start) * i / double(steps - 1));
  }
  return grid;
}

std::string branch_label(const std::optional<protocol::OutcomeKey>& branch) {
  return branch ? branch->label() : "averaged";
}

std::vector<SweepRow> fidelity_sweep(const SweepConfig& config) {
  config.validate();
  if (config.branch) protocol::recovery_sequence(*config.branch);

  std::vector<noise::NoiseKind> kinds = config.kinds;
  std::sort(kinds.begin(), kinds.end(), [](auto a, auto b) {
    return noise::kind_name(a) < noise::kind_name(b);
  });
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

  std::vector<SweepRow> rows;
  for (noise::NoiseKind kind : kinds) {
    for (double eta : config.eta_grid()) {
      const noise::NoiseSpec spec = config.scope == QubitScope::AllSeven
                                        ? noise::NoiseSpec::all_seven(kind, eta)
                                        : noise::NoiseSpec::transmitted(kind, eta);
      SweepRow row{kind,
                   eta,
                   config.target.alpha(),
                   config.target.beta(),
                   branch_label(config.branch),
                   std::string("skipped"),
                   std::string("skipped")};
      if (config.model != ModelChoice::Truncated) {
        row.exact = evaluate(config, noise::model_channel_state(spec, noise::Model::Exact));
      }
      if (config.model != ModelChoice::Exact) {
        if (spec.covers_all_seven()) {
          row.truncated = evaluate(config, noise::model_channel_state(spec, noise::Model::Truncated));
        } else {
          row.truncated = std::string("unsupported");
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace rsp::analysis
