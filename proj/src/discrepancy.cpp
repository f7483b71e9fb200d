#include "rsp/discrepancy.hpp"

#include <cmath>
#include <cstdio>
#include <string_view>

#include "rsp/analysis.hpp"
#include "rsp/channel.hpp"
#include "rsp/noise.hpp"
#include "rsp/recovery_table.hpp"
#include "rsp/security.hpp"

namespace rsp {
namespace {

struct PrintedPattern {
  noise::NoiseKind kind;
  std::string_view expression;  // grouped form, scaled by 1/4
};

constexpr std::array<PrintedPattern, 3> kPrintedFlipTerms{{
    {noise::NoiseKind::BitFlip,
     "+ 111 + 1 m+ + 0 l+;+ 110 + 0 m- - 1 l-;+ 101 + 1 l+ - 0 m+;- 100 + 1 m- + 0 l-;"
     "+ 011 + 1 l- - 0 m-;+ 010 + 0 l+ - 1 m+;+ 001 + 0 l- - 1 m-;+ 000 + 1 l+ + 0 m+"},
    {noise::NoiseKind::PhaseFlip,
     "+ 000 + 0 m- - 1 l-;- 001 + 0 l+ + 1 m+;- 010 + 0 l- + 1 m-;- 011 + 0 m+ - 1 l+;"
     "- 100 + 1 m+ - 0 l+;- 101 + 0 m- + 1 l-;+ 110 + 0 m+ + 1 l+;- 111 + 0 l- - 1 m-"},
    {noise::NoiseKind::BitPhaseFlip,
     "+ 111 - 1 m- + 0 l-;- 110 + 0 m+ + 1 l+;+ 101 + 1 l- + 0 m-;+ 100 + 1 m+ - 0 l+;"
     "- 011 + 0 m+ - 1 l+;+ 010 + 0 l- + 1 m-;+ 001 + 0 l+ + 1 m+;- 000 + 0 l- + 0 m-"},
}};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double averaged_exact(noise::NoiseKind kind, double eta, const TargetState& target) {
  return analysis::branch_averaged_fidelity(target, noise::NoiseSpec::all_seven(kind, eta),
                                            noise::Model::Exact)
      .fidelity;
}

}  // namespace

std::vector<Discrepancy> discrepancy_report() {
  std::vector<Discrepancy> out;

  const channel::GroupedFormCheck grouped = channel::verify_grouped_form();
  out.push_back({"grouped-prefactor",
                 "lambda/mu grouping of the channel is printed with prefactor 1/32",
                 grouped.literal_residual,
                 "1/32 gives a state of norm " + fmt(grouped.literal_norm) +
                     "; prefactor 1/4 reproduces the channel with residual " +
                     fmt(grouped.corrected_residual)});

  for (const protocol::RowAudit& row : protocol::recovery_table().audit) {
    if (!row.key_repaired && !row.gates_repaired) continue;
    const std::string printed =
        protocol::OutcomeKey{row.published.alice, row.published.charlie, row.published.david}
            .label();
    out.push_back({"recovery-row:" + printed,
                   "printed recovery row " + printed + " (" + std::string(row.published.gates) +
                       ") does not hold as printed",
                   row.gates_repaired ? row.published_infidelity : row.collapse_mismatch,
                   row.note + "; in use: " + row.key.label() + " -> " +
                       protocol::format_gates(row.gates)});
  }

  {
    // E1 of amplitude damping on all seven qubits, eta = 1.
    const Ket t = noise::uniform_index_ket(noise::NoiseKind::AmplitudeDamping, 1.0, 1);
    const Matrix computed = outer(t);
    const Matrix printed = outer(Ket(ket("1111111"))) / 32.0;
    out.push_back({"amplitude-damping-terminal",
                   "eta^7 term of amplitude damping is printed on |1111111>",
                   (printed - computed).norm(),
                   "E1 on every qubit leaves weight " + fmt(computed(0, 0).real()) +
                       " on |0000000> and " + fmt(computed(127, 127).real()) + " on |1111111>"});
  }

  for (const PrintedPattern& p : kPrintedFlipTerms) {
    const Ket printed = channel::grouped_expression(p.expression) / 4.0;
    const Ket computed = noise::uniform_index_ket(p.kind, 1.0, 1);
    const double overlap = std::abs(printed.normalized().dot(computed.normalized()));
    out.push_back({"flip-term:" + std::string(noise::kind_name(p.kind)),
                   "printed eta^7 ket for " + std::string(noise::kind_name(p.kind)) +
                       " differs from the flip applied to every qubit",
                   1.0 - overlap,
                   "overlap up to global phase " + fmt(overlap) + ", printed norm " +
                       fmt(printed.norm())});
  }

  {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx a = s, b = cplx(0, s);
    Ket u1(2), u2(2);
    u1 << a, b;
    u2 << -b, a;
    const TargetState t(a, b);
    out.push_back({"alice-basis-complex",
                   "alpha|1> - beta|0> is not orthogonal to alpha|0> + beta|1> for complex targets",
                   std::abs(u1.dot(u2)),
                   "at alpha = 1/sqrt2, beta = i/sqrt2; the conjugated completion is used and "
                   "the U1 branches then give fidelity " +
                       fmt(protocol::run_rsp(t, protocol::OutcomeKey{}).fidelity)});
  }

  {
    const TargetState t = TargetState::normalized(1.0, 1.0);
    const double pf = averaged_exact(noise::NoiseKind::PhaseFlip, 0.5, t);
    const double pd = averaged_exact(noise::NoiseKind::PhaseDamping, 0.5, t);
    double worst = 0.0;
    for (double eta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      worst = std::max(worst, std::abs(averaged_exact(noise::NoiseKind::PhaseDamping, eta, t) -
                                       averaged_exact(noise::NoiseKind::PhaseFlip, eta / 2, t)));
    }
    const double tpf = analysis::branch_averaged_fidelity(
                           t, noise::NoiseSpec::all_seven(noise::NoiseKind::PhaseFlip, 0.5),
                           noise::Model::Truncated)
                           .fidelity;
    const double tdp = analysis::branch_averaged_fidelity(
                           t, noise::NoiseSpec::all_seven(noise::NoiseKind::Depolarizing, 0.5),
                           noise::Model::Truncated)
                           .fidelity;
    out.push_back({"phase-flip-ordering",
                   "phase flip cannot lose the least: phase damping at eta equals phase flip at "
                   "eta/2",
                   pd - pf,
                   "exact averaged fidelity at eta 0.5: phase flip " + fmt(pf) +
                       ", phase damping " + fmt(pd) + "; max |F_pd(eta) - F_pf(eta/2)| = " +
                       fmt(worst) + "; truncated model: phase flip " + fmt(tpf) +
                       ", depolarizing " + fmt(tdp)});
  }

  {
    const auto r = analysis::inside_attack(TargetState::normalized(1.0, 1.0), protocol::OutcomeKey{},
                                           analysis::AttackParams::trivial());
    out.push_back({"trivial-attack-purity",
                   "the identity attack does not give a pure rho_AE",
                   1.0 - r.purity,
                   "Alice's qubit is maximally mixed in every branch, so tr(rho_AE^2) = " +
                       fmt(r.purity) + " for any isometric attack; environment purity " +
                       fmt(r.env_purity)});
  }
  return out;
}

std::string format_report(const std::vector<Discrepancy>& entries) {
  std::string text;
  for (const Discrepancy& d : entries) {
    text += "[" + d.id + "] " + d.summary + "\n  residual " + fmt(d.residual) + "\n  " + d.detail +
            "\n";
  }
  return text;
}

}  // namespace rsp
