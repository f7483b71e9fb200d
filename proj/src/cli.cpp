#include "rsp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "rsp/analysis.hpp"
#include "rsp/channel.hpp"
#include "rsp/discrepancy.hpp"
#include "rsp/noise.hpp"
#include "rsp/protocol.hpp"
#include "rsp/recovery_table.hpp"
#include "rsp/security.hpp"
#include "rsp/sweep_io.hpp"

namespace rsp::cli {
namespace {

// Accepted slack on |alpha|^2 + |beta|^2 before the target is rescaled.
constexpr double kInputNormSlack = 1e-6;

struct Options {
  double alpha = 1.0 / std::sqrt(2.0);
  double alpha_im = 0.0;
  double beta = 1.0 / std::sqrt(2.0);
  double beta_im = 0.0;
  std::uint64_t seed = 0;
  std::string force_outcome;
  std::string noise;
  double eta = 0.0;
  std::string scope = "all";
  std::string model = "both";
  double eta_start = 0.0;
  double eta_end = 1.0;
  int steps = 11;
  std::string branch = "averaged";
  std::string output;
  std::string svg;
  std::string mode;
  int decoys = 10;
  std::size_t trials = 100000;
  int samples = 100;
  bool trivial = false;
  std::string strategy = "intercept-resend";
  int env_dim = 2;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string complex_text(cplx z) {
  return io::fixed12(z.real()) + (z.imag() < 0 && io::fixed12(z.imag())[0] == '-' ? "" : "+") +
         io::fixed12(z.imag()) + "i";
}

TargetState target_from(const Options& o) {
  const cplx a(o.alpha, o.alpha_im), b(o.beta, o.beta_im);
  const double norm2 = std::norm(a) + std::norm(b);
  if (std::abs(norm2 - 1.0) > kInputNormSlack) {
    throw ArgumentError("target amplitudes must satisfy |alpha|^2 + |beta|^2 = 1 (got " +
                        std::to_string(norm2) + ")");
  }
  return TargetState::normalized(a, b);
}

noise::NoiseSpec spec_from(const Options& o, noise::NoiseKind kind, double eta) {
  if (o.scope == "all") return noise::NoiseSpec::all_seven(kind, eta);
  if (o.scope == "transmitted") return noise::NoiseSpec::transmitted(kind, eta);
  throw ArgumentError("--scope must be 'all' or 'transmitted'");
}

std::vector<noise::NoiseKind> kinds_from(const std::string& text) {
  if (text.empty() || text == "all") return {noise::kAllKinds.begin(), noise::kAllKinds.end()};
  std::vector<noise::NoiseKind> kinds;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) kinds.push_back(noise::parse_kind(tok));
  return kinds;
}

std::filesystem::path output_path(const std::string& given, const std::string& fallback) {
  std::filesystem::path p(given.empty() ? fallback : given);
  if (p.is_relative() && given.empty()) {
    if (const char* dir = std::getenv("RSP_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  writer(f);
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

int cmd_run(const Options& o, std::ostream& out) {
  const TargetState target = target_from(o);
  const protocol::ProtocolTranscript t =
      o.force_outcome.empty() ? protocol::run_rsp(target, o.seed)
                              : protocol::run_rsp(target, protocol::OutcomeKey::parse(o.force_outcome));
  out << "target alpha " << complex_text(target.alpha()) << " beta " << complex_text(target.beta())
      << '\n';
  out << "outcome " << t.outcome.label() << '\n';
  out << "probability " << io::fixed12(t.branch_probability) << '\n';
  out << "gates " << protocol::format_gates(t.gates) << '\n';
  // Global phase fixed so the largest amplitude is real and positive.
  Eigen::Index lead = 0;
  t.bob_state.cwiseAbs().maxCoeff(&lead);
  const cplx phase = std::abs(t.bob_state(lead)) > 0
                         ? std::conj(t.bob_state(lead)) / std::abs(t.bob_state(lead))
                         : cplx(1.0);
  static constexpr const char* labels[] = {"00", "01", "10", "11"};
  for (Eigen::Index i = 0; i < 4; ++i) {
    out << "bob |" << labels[i] << "> " << complex_text(phase * t.bob_state(i)) << '\n';
  }
  out << "fidelity " << io::fixed12(t.fidelity) << '\n';

  if (!o.noise.empty() && o.noise != "none") {
    for (noise::NoiseKind kind : kinds_from(o.noise)) {
      const noise::NoiseSpec spec = spec_from(o, kind, o.eta);
      const noise::NoisyBranch exact =
          noise::noisy_rsp_output(target, t.outcome, spec, noise::Model::Exact);
      out << "noise " << noise::kind_name(kind) << " eta " << io::fixed12(o.eta)
          << " fidelity_exact " << io::fixed12(analysis::fidelity(target.xi(), exact.rho));
      if (spec.covers_all_seven()) {
        const noise::NoisyBranch trunc =
            noise::noisy_rsp_output(target, t.outcome, spec, noise::Model::Truncated);
        out << " fidelity_truncated " << io::fixed12(analysis::fidelity(target.xi(), trunc.rho));
      }
      out << '\n';
    }
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  analysis::SweepConfig cfg;
  cfg.kinds = kinds_from(o.noise);
  cfg.eta_start = o.eta_start;
  cfg.eta_end = o.eta_end;
  cfg.steps = o.steps;
  cfg.target = target_from(o);
  if (o.model == "exact") {
    cfg.model = analysis::ModelChoice::Exact;
  } else if (o.model == "truncated") {
    cfg.model = analysis::ModelChoice::Truncated;
  } else if (o.model == "both") {
    cfg.model = analysis::ModelChoice::Both;
  } else {
    throw ArgumentError("--model must be exact, truncated or both");
  }
  if (o.branch != "averaged") cfg.branch = protocol::OutcomeKey::parse(o.branch);
  if (o.scope == "all") {
    cfg.scope = analysis::QubitScope::AllSeven;
  } else if (o.scope == "transmitted") {
    cfg.scope = analysis::QubitScope::Transmitted;
  } else {
    throw ArgumentError("--scope must be 'all' or 'transmitted'");
  }
  const auto rows = analysis::fidelity_sweep(cfg);
  const auto csv = output_path(o.output, "sweep.csv");
  write_file(csv, [&](std::ostream& f) { io::write_sweep_csv(f, rows); });
  out << "wrote " << rows.size() << " rows to " << csv.string() << '\n';
  if (!o.svg.empty()) {
    write_file(o.svg, [&](std::ostream& f) { io::write_sweep_svg(f, rows); });
    out << "wrote chart to " << o.svg << '\n';
  }
  return kOk;
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> verify_suite() {
  std::vector<Check> checks;
  const double amp = 1.0 / (4.0 * std::sqrt(2.0));

  {
    const Ket psi = channel::build_channel();
    int nonzero = 0;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      if (std::abs(psi(i)) > 1e-12) {
        ++nonzero;
        worst = std::max(worst, std::abs(std::abs(psi(i)) - amp));
      }
    }
    double sign_err = 0.0;
    for (const auto& term : channel::printed_channel_terms()) {
      sign_err = std::max(sign_err, std::abs(psi.dot(ket(term.bits)) - term.sign * amp));
    }
    char d[128];
    std::snprintf(d, sizeof d, "%d entries at %.12f (max deviation %.1e, sign residual %.1e)",
                  nonzero, amp, worst, sign_err);
    checks.push_back({"channel amplitudes", nonzero == 32 && worst <= 1e-12 && sign_err <= 1e-12, d});
  }
  {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> n;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const TargetState t = TargetState::normalized(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)));
      worst = std::max(worst, channel::verify_factorization(t));
    }
    checks.push_back({"factorization residual", worst <= 1e-12,
                      "max over 100 random complex targets " + io::fixed12(worst)});
  }
  {
    const auto& table = protocol::recovery_table();
    std::string detail = "16/16 rows verified or repaired, " +
                         std::to_string(table.repair_count()) + " repaired";
    double worst = 0.0;
    for (const auto& rule : table.rules) {
      worst = std::max(worst, protocol::recovery_infidelity(rule.key, rule.gates));
    }
    for (const auto& a : table.audit) {
      if (a.key_repaired || a.gates_repaired) detail += "\n    " + a.key.label() + ": " + a.note;
    }
    checks.push_back({"recovery table", worst <= 1e-12, detail});
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double th = u(rng), g = u(rng);
      const cplx ph = std::polar(1.0, g);
      for (const auto& t : protocol::enumerate_branches(
               TargetState(ph * std::cos(th), ph * std::sin(th)))) {
        worst = std::max({worst, std::abs(1.0 - t.fidelity), std::abs(t.branch_probability - 1.0 / 16)});
      }
    }
    checks.push_back({"noiseless determinism", worst <= 1e-12,
                      "20 targets x 16 branches, max |1 - F|, |p - 1/16| = " + io::fixed12(worst)});
  }
  {
    double worst = 0.0;
    for (noise::NoiseKind k : noise::kAllKinds) {
      for (int i = 0; i <= 20; ++i) {
        worst = std::max(worst, noise::completeness_residual(noise::kraus_operators(k, i / 20.0)));
      }
    }
    checks.push_back({"Kraus completeness", worst <= 1e-12, "max residual " + io::fixed12(worst)});
  }
  {
    const TargetState t = TargetState::normalized(1.0, 1.0);
    double worst = 0.0;
    for (noise::NoiseKind k : noise::kAllKinds) {
      for (noise::Model m : {noise::Model::Exact, noise::Model::Truncated}) {
        worst = std::max(worst, std::abs(1.0 - analysis::branch_averaged_fidelity(
                                                   t, noise::NoiseSpec::all_seven(k, 0.0), m)
                                                   .fidelity));
      }
    }
    checks.push_back({"noiseless limit", worst <= 1e-12, "max |1 - F| at eta 0 " + io::fixed12(worst)});
  }
  return checks;
}

int cmd_verify(std::ostream& out) {
  bool ok = true;
  for (const Check& c : verify_suite()) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    ok = ok && c.pass;
  }
  out << "\ndiscrepancy report\n" << format_report(discrepancy_report());
  return ok ? kOk : kFailure;
}

int cmd_security(const Options& o, std::ostream& out) {
  if (o.mode == "outside") {
    const auto strategy = analysis::parse_strategy(o.strategy);
    const auto est = analysis::outside_attack_sim(o.decoys, strategy, o.trials, o.seed);
    const double exact = analysis::decoy_detection_probability(o.decoys, strategy);
    out << "strategy " << analysis::strategy_name(strategy) << '\n';
    out << "decoys " << o.decoys << " trials " << est.trials << '\n';
    out << "detection_estimate " << io::fixed12(est.probability) << '\n';
    out << "std_error " << io::fixed12(est.std_error) << '\n';
    out << "analytic " << io::fixed12(exact) << '\n';
    const double z = est.std_error > 0 ? std::abs(est.probability - exact) / est.std_error : 0.0;
    out << "deviation_sigma " << io::fixed12(z) << '\n';
    for (int m = 1; m <= std::min(o.decoys, 10); ++m) {
      out << "curve " << m << ' ' << io::fixed12(analysis::decoy_detection_probability(m, strategy))
          << '\n';
    }
    return kOk;
  }
  if (o.mode != "inside") throw ArgumentError("--mode must be 'inside' or 'outside'");

  const TargetState target = target_from(o);
  const protocol::OutcomeKey key =
      o.force_outcome.empty() ? protocol::OutcomeKey{} : protocol::OutcomeKey::parse(o.force_outcome);
  if (o.trivial) {
    const auto r = analysis::inside_attack(target, key, analysis::AttackParams::trivial(o.env_dim));
    out << "attack trivial\n";
    out << "purity_ae " << io::fixed12(r.purity) << '\n';
    out << "purity_env " << io::fixed12(r.env_purity) << '\n';
    out << "target_dependence " << io::fixed12(r.target_dependence) << '\n';
    if (r.target_dependence <= 1e-12) out << "note attack extracts no information\n";
    return kOk;
  }
  if (o.samples < 1) throw ArgumentError("--samples must be at least 1");
  std::mt19937_64 rng(o.seed);
  double lo = 1.0, hi = 0.0, worst_chain = 0.0, worst_iso = 0.0;
  bool chain_ok = true;
  for (int i = 0; i < o.samples; ++i) {
    const auto params = analysis::AttackParams::random(o.env_dim, rng);
    const auto r = analysis::inside_attack(target, key, params);
    lo = std::min(lo, r.purity);
    hi = std::max(hi, r.purity);
    worst_chain = std::max(worst_chain, r.purity - r.chain.bound[0]);
    worst_iso = std::max(worst_iso, r.isometry_residual);
    chain_ok = chain_ok && r.chain.holds(r.purity);
  }
  out << "samples " << o.samples << '\n';
  out << "purity_min " << io::fixed12(lo) << '\n';
  out << "purity_max " << io::fixed12(hi) << '\n';
  out << "isometry_residual_max " << io::fixed12(worst_iso) << '\n';
  out << "bound_chain " << (chain_ok ? "holds" : "violated") << '\n';
  out << "verdict " << (hi < 1.0 - 1e-6 ? "mixed for every sample" : "pure state reached") << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Remote state preparation over a seven-qubit channel", "rsp"};
  Options o;
  app.set_config("--config", "", "flat key = value file; flags override it");
  app.add_option("--alpha", o.alpha, "real part of alpha");
  app.add_option("--alpha-im", o.alpha_im, "imaginary part of alpha");
  app.add_option("--beta", o.beta, "real part of beta");
  app.add_option("--beta-im", o.beta_im, "imaginary part of beta");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--force-outcome", o.force_outcome, "outcome key such as U1,00,00");
  app.add_option("--noise", o.noise, "noise kind, comma list or 'all'");
  app.add_option("--eta", o.eta, "noise parameter for run");
  app.add_option("--scope", o.scope, "all | transmitted");
  app.add_option("--model", o.model, "exact | truncated | both");
  app.add_option("--eta-start", o.eta_start);
  app.add_option("--eta-end", o.eta_end);
  app.add_option("--steps", o.steps);
  app.add_option("--branch", o.branch, "averaged or an outcome key");
  app.add_option("--output", o.output, "CSV path (default: $RSP_OUTPUT_DIR/sweep.csv)");
  app.add_option("--svg", o.svg, "also write an SVG chart");
  app.add_option("--mode", o.mode, "inside | outside");
  app.add_option("--decoys", o.decoys);
  app.add_option("--trials", o.trials);
  app.add_option("--samples", o.samples);
  app.add_flag("--trivial", o.trivial, "use the identity attack");
  app.add_option("--strategy", o.strategy, "intercept-resend | measure-resend");
  app.add_option("--env-dim", o.env_dim);

  auto* run = app.add_subcommand("run", "run the protocol once")->fallthrough();
  auto* sweep = app.add_subcommand("sweep", "fidelity against eta, written as CSV")->fallthrough();
  auto* verify = app.add_subcommand("verify", "invariant checks and discrepancy report")->fallthrough();
  auto* security = app.add_subcommand("security", "inside or outside attack")->fallthrough();
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (verify->parsed()) return cmd_verify(out);
    if (security->parsed()) return cmd_security(o, out);
  } catch (const ImpossibleBranchError& e) {
    err << "error: " << e.what() << '\n';
    return kImpossibleBranch;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rsp::cli
